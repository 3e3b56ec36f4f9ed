"""Presented *-algebras with a chosen braiding, read from .alg files.

A presentation fixes: an ordered generator alphabet with grades and an
involution pairing, a braiding (graded-sign or diagonal), a normal-ordering
rewrite system (two-letter left sides only), an optional cocycle support
table, and an antipode table.  Parsing validates everything that can be
checked locally; the global properties (confluence, compatibility of the
structure maps with the quotient) have their own check functions below.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Scalar, as_scalar, parse_rational

Word = tuple  # tuple[int, ...): generator indices; () is the unit monomial

# 'i' is the imaginary unit and 't' the deformation parameter in output,
# so neither may name a generator.
_RESERVED = {"i", "t"}

_TOKEN = re.compile(r"\d+/\d+|\d+|[A-Za-z_][A-Za-z0-9_]*|\S")


class PresentationError(ValueError):
    """Parse or validation failure, with the 1-based source line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass
class Report:
    """Outcome of a single check.

    status is 'pass', 'fail' or 'skipped'; witness is present only on
    failure and serializes with string values throughout.
    """

    id: str
    status: str
    degree: int
    witness: dict | None = None

    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = {"id": self.id, "status": self.status, "degree": self.degree}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass(frozen=True)
class Rule:
    lhs: Word                                  # two letters, strictly descending
    rhs: tuple                                 # ((Word, Scalar), ...) sorted by word


@dataclass(frozen=True)
class AlgebraPresentation:
    name: str
    generators: tuple
    grades: tuple                              # by generator index
    star: tuple                                # involution as an index map
    braiding_kind: str                         # 'graded-sign' | 'diagonal'
    braiding_table: tuple | None               # row g, column h -> Scalar c(g, h)
    rules: tuple                               # of Rule
    cocycle: tuple                             # ((Word, Word, Scalar), ...)
    antipode: tuple                            # per generator: ((Scalar, Word), ...)

    def gen_index(self, symbol: str) -> int:
        try:
            return self.generators.index(symbol)
        except ValueError:
            raise PresentationError(f"unknown generator {symbol!r}") from None

    def word_str(self, w: Word) -> str:
        return " ".join(self.generators[k] for k in w) if w else "1"


# ---------------------------------------------------------------------------
# element expressions


def parse_element_terms(text: str, names: dict, line: int | None = None):
    """Parse a Scalar-weighted sum of words over the given alphabet.

    Terms are separated by + / -, each an optional coefficient (rational,
    optionally followed by i, or bare i) juxtaposed with zero or more
    generator symbols.  Returns a dict Word -> Scalar with zeros dropped.
    """
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise PresentationError("empty element expression", line)
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(tokens):
        sign = 1
        while pos < len(tokens) and tokens[pos] in "+-":
            if tokens[pos] == "-":
                sign = -sign
            pos += 1
            first = False
        if pos >= len(tokens):
            raise PresentationError("dangling sign in element expression", line)
        if not first and sign == 1 and tokens[pos - 1] not in "+-":
            raise PresentationError(
                f"expected + or - before {tokens[pos]!r}", line)
        first = False
        coeff = Scalar(1)
        have_coeff = False
        tok = tokens[pos]
        if re.fullmatch(r"\d+(/\d+)?", tok):
            try:
                coeff = Scalar(Fraction(tok))
            except ZeroDivisionError:
                raise PresentationError(
                    f"malformed scalar {tok!r}", line) from None
            have_coeff = True
            pos += 1
            tok = tokens[pos] if pos < len(tokens) else None
        if tok == "i":
            coeff = coeff * Scalar(0, 1)
            have_coeff = True
            pos += 1
        word = []
        while pos < len(tokens) and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tokens[pos]):
            sym = tokens[pos]
            if sym == "i":
                raise PresentationError("'i' is reserved for the imaginary unit", line)
            if sym not in names:
                raise PresentationError(f"unknown generator {sym!r}", line)
            word.append(names[sym])
            pos += 1
        if not word and not have_coeff:
            raise PresentationError(
                f"unexpected token {tokens[pos]!r} in element expression", line)
        if pos < len(tokens) and tokens[pos] not in "+-":
            raise PresentationError(
                f"unexpected token {tokens[pos]!r} in element expression", line)
        key = tuple(word)
        c = sign * coeff if sign == -1 else coeff
        if key in terms:
            terms[key] = terms[key] + c
        else:
            terms[key] = c
    return {w: c for w, c in terms.items() if c}


def _parse_word(text: str, names: dict, line: int | None = None) -> Word:
    word = []
    for tok in text.split():
        if tok not in names:
            raise PresentationError(f"unknown generator {tok!r}", line)
        word.append(names[tok])
    return tuple(word)


# ---------------------------------------------------------------------------
# file parsing

_SECTIONS = ("algebra", "braiding", "relations", "cocycle", "antipode")


def parse_presentation(text: str) -> AlgebraPresentation:
    """Parse an .alg file; raises PresentationError with a line number."""
    sections: dict = {name: [] for name in _SECTIONS}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^\[([a-z-]+)\]\s*(.*)$", line)
        if m:
            name, rest = m.group(1), m.group(2).strip()
            if name not in _SECTIONS:
                raise PresentationError(f"unknown section [{name}]", lineno)
            current = name
            if rest:
                sections[current].append((lineno, rest))
            continue
        if current is None:
            raise PresentationError(f"content before any section: {line!r}", lineno)
        sections[current].append((lineno, line))

    meta = _parse_keyvals(sections["algebra"], "algebra")
    name = meta.get("name")
    if not name:
        raise PresentationError("missing 'name' in [algebra]")
    gens = tuple(meta.get("generators", "").split())
    if not gens:
        raise PresentationError("missing 'generators' in [algebra]")
    if len(set(gens)) != len(gens):
        raise PresentationError("duplicate generator")
    for g in gens:
        if g in _RESERVED:
            raise PresentationError(f"generator name {g!r} is reserved")
    names = {g: k for k, g in enumerate(gens)}

    star = _parse_involution(meta, names, gens)
    grades = _parse_grades(meta, names, gens, star)
    kind, table = _parse_braiding(sections["braiding"], names, gens)
    rules = _parse_rules(sections["relations"], names, gens)
    cocycle = _parse_cocycle(sections["cocycle"], names, rules)
    antipode = _parse_antipode(sections["antipode"], names, gens, star)

    return AlgebraPresentation(
        name=name, generators=gens, grades=grades, star=star,
        braiding_kind=kind, braiding_table=table, rules=rules,
        cocycle=cocycle, antipode=antipode,
    )


def _parse_keyvals(lines, section):
    out = {}
    for lineno, line in lines:
        if "=" not in line:
            raise PresentationError(f"expected 'key = value' in [{section}]", lineno)
        key, val = (s.strip() for s in line.split("=", 1))
        if key in out:
            raise PresentationError(f"duplicate key {key!r} in [{section}]", lineno)
        out[key] = val
        out.setdefault("_lines", {})[key] = lineno
    return out


def _parse_involution(meta, names, gens):
    spec = meta.get("involution")
    if spec is None:
        raise PresentationError("missing 'involution' in [algebra]")
    lineno = meta.get("_lines", {}).get("involution")
    star = [None] * len(gens)
    for pair in spec.split():
        if ":" not in pair:
            raise PresentationError(f"malformed involution pair {pair!r}", lineno)
        a, b = pair.split(":", 1)
        for sym in (a, b):
            if sym not in names:
                raise PresentationError(f"unknown generator {sym!r}", lineno)
        ia, ib = names[a], names[b]
        for i, j in ((ia, ib), (ib, ia)):
            if star[i] is not None and star[i] != j:
                raise PresentationError(
                    f"involution is not involutive at {gens[i]!r}", lineno)
            star[i] = j
    for k, g in enumerate(gens):
        if star[k] is None:
            raise PresentationError(f"generator {g!r} missing from involution", lineno)
    return tuple(star)


def _parse_grades(meta, names, gens, star):
    spec = meta.get("grade")
    if spec is None:
        raise PresentationError("missing 'grade' in [algebra]")
    lineno = meta.get("_lines", {}).get("grade")
    grades = [None] * len(gens)
    for pair in spec.split():
        if ":" not in pair:
            raise PresentationError(f"malformed grade entry {pair!r}", lineno)
        sym, val = pair.split(":", 1)
        if sym not in names:
            raise PresentationError(f"unknown generator {sym!r}", lineno)
        try:
            g = int(val)
        except ValueError:
            raise PresentationError(f"malformed grade {val!r}", lineno) from None
        if g < 0:
            raise PresentationError("grades must be nonnegative", lineno)
        grades[names[sym]] = g
    for k, g in enumerate(gens):
        if grades[k] is None:
            raise PresentationError(f"generator {g!r} missing from grade map", lineno)
        if grades[k] != grades[star[k]]:
            raise PresentationError(
                f"grade of {g!r} differs from its involution image", lineno)
    return tuple(grades)


def _parse_braiding(lines, names, gens):
    if not lines:
        raise PresentationError("missing [braiding] section")
    kind = None
    entries = {}
    for lineno, line in lines:
        if "=" not in line:
            raise PresentationError("expected 'key = value' in [braiding]", lineno)
        key, val = (s.strip() for s in line.split("=", 1))
        if key == "kind":
            if val not in ("graded-sign", "diagonal"):
                raise PresentationError(f"unknown braiding kind {val!r}", lineno)
            kind = val
            continue
        pair = key.split()
        if len(pair) != 2:
            raise PresentationError(
                f"diagonal braiding entries look like 'g h = scalar', got {key!r}",
                lineno)
        for sym in pair:
            if sym not in names:
                raise PresentationError(f"unknown generator {sym!r}", lineno)
        try:
            c = Scalar.parse(val)
        except ValueError as exc:
            raise PresentationError(str(exc), lineno) from None
        if not c:
            raise PresentationError(
                "diagonal braiding coefficients must be nonzero", lineno)
        entries[(names[pair[0]], names[pair[1]])] = c
    if kind is None:
        raise PresentationError("missing 'kind' in [braiding]")
    if kind == "graded-sign":
        if entries:
            raise PresentationError("graded-sign braiding takes no table entries")
        return kind, None
    n = len(gens)
    table = []
    for g in range(n):
        row = []
        for h in range(n):
            if (g, h) not in entries:
                raise PresentationError(
                    f"missing diagonal braiding entry for {gens[g]} {gens[h]}")
            row.append(entries[(g, h)])
        table.append(tuple(row))
    return kind, tuple(table)


def _parse_rules(lines, names, gens):
    rules = []
    seen = set()
    for lineno, line in lines:
        if "=" not in line:
            raise PresentationError("expected 'lhs = rhs' relation", lineno)
        lhs_text, rhs_text = (s.strip() for s in line.split("=", 1))
        lhs = _parse_word(lhs_text, names, lineno)
        if len(lhs) != 2:
            raise PresentationError("relation left sides are two-letter words", lineno)
        if lhs[0] <= lhs[1]:
            raise PresentationError(
                "relation left side is already in normal order", lineno)
        terms = parse_element_terms(rhs_text, names, lineno)
        for w in terms:
            if len(w) not in (0, 2):
                raise PresentationError(
                    "relation right sides are sums of two-letter words and a constant",
                    lineno)
            if len(w) == 2:
                if w[0] > w[1]:
                    raise PresentationError(
                        f"right-side word {gens[w[0]]} {gens[w[1]]} is not in normal order",
                        lineno)
                if w[0] >= lhs[0]:
                    raise PresentationError(
                        "right-side words must start strictly below the left side "
                        "in generator order (rewriting would not terminate)",
                        lineno)
        rule = Rule(lhs=lhs, rhs=tuple(sorted(terms.items(), key=lambda kv: kv[0])))
        if (rule.lhs, rule.rhs) in seen:
            continue  # exact duplicate
        seen.add((rule.lhs, rule.rhs))
        rules.append(rule)
    return tuple(rules)


def _word_is_normal(w: Word, rule_lhs: set) -> bool:
    return all((w[k], w[k + 1]) not in rule_lhs for k in range(len(w) - 1))


def _parse_cocycle(lines, names, rules):
    lhs_set = {r.lhs for r in rules}
    table = []
    seen = set()
    for lineno, line in lines:
        if "=" not in line or "|" not in line.split("=", 1)[0]:
            raise PresentationError("cocycle entries look like 'm | n = scalar'", lineno)
        key_text, val_text = (s.strip() for s in line.split("=", 1))
        left_text, right_text = (s.strip() for s in key_text.split("|", 1))
        left = _parse_word(left_text, names, lineno)
        right = _parse_word(right_text, names, lineno)
        if not left or not right:
            raise PresentationError("cocycle keys must not involve the unit", lineno)
        for w in (left, right):
            if not _word_is_normal(w, lhs_set):
                raise PresentationError("cocycle keys must be normal-form monomials",
                                        lineno)
        if (left, right) in seen:
            raise PresentationError("duplicate cocycle key", lineno)
        seen.add((left, right))
        try:
            val = Scalar.parse(val_text)
        except ValueError as exc:
            raise PresentationError(str(exc), lineno) from None
        table.append((left, right, val))
    return tuple(table)


def _parse_antipode(lines, names, gens, star):
    given = {}
    for lineno, line in lines:
        if "=" not in line:
            raise PresentationError("antipode entries look like 'g = element'", lineno)
        sym, val = (s.strip() for s in line.split("=", 1))
        if sym not in names:
            raise PresentationError(f"unknown generator {sym!r}", lineno)
        if names[sym] in given:
            raise PresentationError(f"duplicate antipode entry for {sym!r}", lineno)
        given[names[sym]] = parse_element_terms(val, names, lineno)

    def star_element(terms):
        # (sum c_w w)* with letters starred and words reversed
        out = {}
        for w, c in terms.items():
            key = tuple(star[k] for k in reversed(w))
            out[key] = out.get(key, Scalar(0)) + c.conj()
        return {w: c for w, c in out.items() if c}

    table = []
    for k in range(len(gens)):
        if k in given:
            terms = given[k]
        elif star[k] in given:
            # involution-image consistency: S(g*) = S(g)*
            terms = star_element(given[star[k]])
        else:
            terms = {(k,): Scalar(-1)}
        table.append(tuple(sorted(terms.items(), key=lambda kv: kv[0])))
    return tuple(table)


# ---------------------------------------------------------------------------
# pretty-printing (canonical form; parse . pretty_print is the identity)


def format_scalar_coeff(c: Scalar) -> str:
    """Coefficient in element-expression syntax (sign folded, 'i' juxtaposed)."""
    if c.re and c.im:
        raise ValueError("coefficients with both parts cannot be juxtaposed")
    if c.im:
        v = c.im
        body = "i" if abs(v) == 1 else f"{abs(v)} i"
        return ("- " if v < 0 else "") + body
    v = c.re
    return ("- " if v < 0 else "") + str(abs(v))


def format_element_terms(terms, pres: AlgebraPresentation) -> str:
    if not terms:
        return "0"
    parts = []
    for w, c in sorted(terms, key=lambda kv: (-len(kv[0]), kv[0])):
        body = format_scalar_coeff(c)
        neg = body.startswith("- ")
        if neg:
            body = body[2:]
        if w:
            body = pres.word_str(w) if body == "1" else f"{body} {pres.word_str(w)}"
        if not parts:
            parts.append(("- " if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def pretty_print(pres: AlgebraPresentation) -> str:
    lines = ["[algebra]"]
    lines.append(f"name = {pres.name}")
    lines.append("generators = " + " ".join(pres.generators))
    done = set()
    pairs = []
    for k, s in enumerate(pres.star):
        if k in done:
            continue
        pairs.append(f"{pres.generators[k]}:{pres.generators[s]}")
        done.update((k, s))
    lines.append("involution = " + " ".join(pairs))
    lines.append("grade = " + " ".join(
        f"{g}:{d}" for g, d in zip(pres.generators, pres.grades)))
    lines.append("")
    lines.append("[braiding]")
    lines.append(f"kind = {pres.braiding_kind}")
    if pres.braiding_kind == "diagonal":
        for g, row in enumerate(pres.braiding_table):
            for h, c in enumerate(row):
                lines.append(
                    f"{pres.generators[g]} {pres.generators[h]} = {c}")
    lines.append("")
    lines.append("[relations]")
    for rule in pres.rules:
        lines.append(
            f"{pres.word_str(rule.lhs)} = {format_element_terms(rule.rhs, pres)}")
    lines.append("")
    lines.append("[cocycle]")
    for left, right, val in pres.cocycle:
        lines.append(f"{pres.word_str(left)} | {pres.word_str(right)} = {val}")
    lines.append("")
    lines.append("[antipode]")
    for k, terms in enumerate(pres.antipode):
        lines.append(
            f"{pres.generators[k]} = {format_element_terms(terms, pres)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# global checks


def check_confluence(pres: AlgebraPresentation) -> Report:
    """Pass iff rewriting is unambiguous: no inconsistent duplicate left
    sides, and every three-letter word reaches a unique normal form under
    every reduction order."""
    by_lhs = {}
    for rule in pres.rules:
        if rule.lhs in by_lhs and by_lhs[rule.lhs] != rule.rhs:
            return Report("confluence", "fail", 3, {
                "input": pres.word_str(rule.lhs),
                "lhs": format_element_terms(by_lhs[rule.lhs], pres),
                "rhs": format_element_terms(rule.rhs, pres),
            })
        by_lhs[rule.lhs] = rule.rhs

    n = len(pres.generators)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                word = (a, b, c)
                results = reduction_closure({word: Scalar(1)}, by_lhs)
                if len(results) != 1:
                    two = sorted(results)[:2]
                    return Report("confluence", "fail", 3, {
                        "input": pres.word_str(word),
                        "lhs": format_element_terms(dict(two[0]).items(), pres),
                        "rhs": format_element_terms(dict(two[1]).items(), pres),
                    })
    return Report("confluence", "pass", 3)


def reduction_closure(element: dict, by_lhs: dict) -> set:
    """All normal forms reachable from a linear combination of words by
    rewriting in every possible order.  Each result is a canonical frozen
    term list; confluent systems yield a singleton."""
    def canon(terms):
        return tuple(sorted((w, c) for w, c in terms.items() if c))

    seen = set()
    results = set()

    def explore(terms):
        key = canon(terms)
        if key in seen:
            return
        seen.add(key)
        redexes = []
        for w in terms:
            for p in range(len(w) - 1):
                if (w[p], w[p + 1]) in by_lhs:
                    redexes.append((w, p))
        if not redexes:
            results.add(key)
            return
        for w, p in redexes:
            c = terms[w]
            new = dict(terms)
            del new[w]
            for rw, coeff in by_lhs[(w[p], w[p + 1])]:
                nw = w[:p] + rw + w[p + 2:]
                new[nw] = new.get(nw, Scalar(0)) + c * coeff
            explore({w2: c2 for w2, c2 in new.items() if c2})

    explore({w: c for w, c in element.items() if c})
    return results


def check_quotient_compatibility(pres: AlgebraPresentation,
                                 max_degree: int = 4) -> Report:
    """Verify the ideal spanned by the relations is stable under the
    structure maps, so comultiplication, counit, braiding and antipode
    descend to the quotient.  Four sub-checks per rule:

    (a) the comultiplication of lhs - rhs normalizes to 0 slotwise,
    (b) both sides share the same counit,
    (c) braiding any basis monomial across lhs - rhs normalizes to 0,
    (d) the antipode of lhs - rhs normalizes to 0.

    Assumes confluence already passed.
    """
    from .algebra import Algebra
    from .braidtensor import comul

    alg = Algebra(pres)
    free = alg.free()

    def nf_slots(tensor):
        out = tensor.zero_like()
        for key, c in tensor.terms.items():
            parts = [alg.normal_form_word(w) for w in key]
            _splice_into(out, parts, c)
        return out

    for rule in pres.rules:
        rel = free.element({rule.lhs: Scalar(1)})
        for w, coeff in rule.rhs:
            rel = rel + free.element({w: -coeff})

        # (b) counit agreement
        eps = rel.terms.get(((),))
        if eps:
            return Report("quotient-compat", "fail", max_degree, {
                "input": pres.word_str(rule.lhs),
                "subcheck": "b",
                "lhs": "0",
                "rhs": str(eps),
            })

        # (a) comultiplication defect
        defect = comul(free, rel)
        defect = nf_slots(defect)
        if defect.terms:
            return Report("quotient-compat", "fail", max_degree, {
                "input": pres.word_str(rule.lhs),
                "subcheck": "a",
                "lhs": "0",
                "rhs": alg.format(defect),
            })

        # (d) antipode defect
        sdef = alg.zero(1)
        for w, c in rel.terms.items():
            sdef = sdef + free.antipode_word(w[0]).scale(c)
        sdef = nf_slots(sdef)
        if sdef.terms:
            return Report("quotient-compat", "fail", max_degree, {
                "input": pres.word_str(rule.lhs),
                "subcheck": "d",
                "lhs": "0",
                "rhs": alg.format(sdef),
            })

        # (c) braiding stability, both sides
        for m in alg.basis(max_degree):
            for flip in (False, True):
                out = alg.zero(2)
                for w, c in rel.terms.items():
                    w = w[0]
                    if flip:
                        k = alg.braid_coeff(w, m)
                        pair = (m, w)
                    else:
                        k = alg.braid_coeff(m, w)
                        pair = (w, m)
                    parts = [alg.normal_form_word(pair[0]),
                             alg.normal_form_word(pair[1])]
                    _splice_into(out, parts, c * k)
                if out.terms:
                    return Report("quotient-compat", "fail", max_degree, {
                        "input": f"{pres.word_str(m)} across {pres.word_str(rule.lhs)}",
                        "subcheck": "c",
                        "lhs": "0",
                        "rhs": alg.format(out),
                    })

    return Report("quotient-compat", "pass", max_degree)


def _splice_into(acc, parts, coeff):
    """Accumulate the tensor product of rank-1 factors, scaled, into acc."""
    from itertools import product

    for combo in product(*(p.terms.items() for p in parts)):
        key = tuple(kv[0][0] for kv in combo)
        c = coeff
        for kv in combo:
            c = c * kv[1]
        acc.add_term(key, c)
