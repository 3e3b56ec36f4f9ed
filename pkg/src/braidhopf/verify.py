"""Catalog-driven verification of the axioms and deformation identities.

Every identity the engine relies on is a named check over exhaustively
enumerated basis inputs up to the degree cutoff.  Checks are gated by
their logical prerequisites: nothing downstream of a broken rewrite
system or a broken generator is reported as failing for reasons that are
merely consequences, it is reported as skipped with the blocking check
named.  The module also houses the exact positive-semidefiniteness
certificate, the conditional-positivity/state checker built on it, and
the evaluator for the diagonal-braiding obstruction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .algebra import Algebra, Tensor, tensor_product
from .braidtensor import (braid_at, braid_mn, braid_pair, braided_product,
                          comul, comul_iter, comul_word, counit, lambda_n_key,
                          star_tensor)
from .deform import (Deformation, Functional, cocycle_defect,
                     conv_exp_key, conv_map, conv_power, conv_sesqui,
                     convolve_fn, functional_map, identity_map,
                     psi_functional, sesquilinearize)
from .presentation import (AlgebraPresentation, PresentationError, Report,
                           check_confluence, check_quotient_compatibility)
from .scalars import (Scalar, TPoly, T_ONE, T_ZERO, as_scalar, parse_rational,
                      S_ONE, S_ZERO)

GRID = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2),
        Fraction(-3, 2))
HERMITIAN_SAMPLES = (Fraction(1, 2), Fraction(1), Fraction(2))


def fixture_path(name: str):
    """Path to a packaged example presentation or support table."""
    return resources.files(__package__) / "fixtures" / name


# ---------------------------------------------------------------------------
# the catalog driver


class VerifyContext:
    """Shared state for one catalog run: algebra, generator, memo tables."""

    def __init__(self, pres: AlgebraPresentation, max_degree: int = 4):
        self.pres = pres
        self.max_degree = max_degree
        self.alg = Algebra(pres)
        self.defm = Deformation(self.alg)
        self.L = self.defm.L

    def words(self):
        return self.alg.basis(self.max_degree)

    def pairs(self):
        b = self.words()
        return [(u, v) for u in b for v in b]

    def triples(self):
        b = self.words()
        return [(u, v, w) for u in b for v in b for w in b]

    def small_triples(self):
        """Triples of total degree within the cutoff (for the identities
        whose evaluation walks a rank-3 comultiplication)."""
        b = self.words()
        return [(u, v, w) for u in b for v in b for w in b
                if len(u) + len(v) + len(w) <= self.max_degree]

    def key_str(self, *words):
        return " (x) ".join(self.pres.word_str(w) for w in words)

    def fmt(self, x):
        return self.alg.format(x) if isinstance(x, Tensor) else str(x)

    def fail(self, cid, words, lhs, rhs, **extra) -> Report:
        wit = {"input": self.key_str(*words),
               "lhs": self.fmt(lhs), "rhs": self.fmt(rhs)}
        wit.update({k: str(v) for k, v in extra.items()})
        return Report(cid, "fail", self.max_degree, wit)

    def ok(self, cid) -> Report:
        return Report(cid, "pass", self.max_degree)


# -- slotwise helpers -------------------------------------------------------


def _mul_slots(alg, u, i):
    out = Tensor(u.rank - 1)
    for key, c in u.terms.items():
        for (mw,), mc in alg.mul_words(key[i], key[i + 1]).terms.items():
            out.add_term(key[:i] + (mw,) + key[i + 2:], c * mc)
    return out


def _comul_slot(alg, u, i):
    out = Tensor(u.rank + 1)
    for key, c in u.terms.items():
        for (k0, k1), v in comul_word(alg, key[i]).terms.items():
            out.add_term(key[:i] + (k0, k1) + key[i + 1:], c * v)
    return out


def _counit_slot(u, i):
    out = Tensor(u.rank - 1)
    for key, c in u.terms.items():
        if key[i] == ():
            out.add_term(key[:i] + key[i + 1:], c)
    return out


def _map_slot(u, i, word_map):
    """Apply a word -> Tensor(1) map to slot i, linearly."""
    out = Tensor(u.rank)
    for key, c in u.terms.items():
        for (w,), v in word_map(key[i]).terms.items():
            out.add_term(key[:i] + (w,) + key[i + 1:], c * v)
    return out


def _flip_t(u: Tensor) -> Tensor:
    out = Tensor(u.rank)
    for key, c in u.terms.items():
        out.terms[key] = c.flip_sign()
    return out


# -- structure checks -------------------------------------------------------


def _chk_confluence(ctx) -> Report:
    return check_confluence(ctx.pres)


def _chk_quotient(ctx) -> Report:
    return check_quotient_compatibility(ctx.pres, ctx.max_degree)


def _chk_assoc_mul(ctx) -> Report:
    alg = ctx.alg
    for a, b, c in ctx.triples():
        left = alg.mul(alg.mul_words(a, b), Tensor.basis((c,)))
        right = alg.mul(Tensor.basis((a,)), alg.mul_words(b, c))
        if left != right:
            return ctx.fail("assoc-mul", (a, b, c), left, right)
    return ctx.ok("assoc-mul")


def _chk_braid_equation(ctx) -> Report:
    alg = ctx.alg
    for a, b, c in ctx.triples():
        u = Tensor.basis((a, b, c))
        left = braid_at(alg, braid_at(alg, braid_at(alg, u, 0, 1, 1),
                                      1, 1, 1), 0, 1, 1)
        right = braid_at(alg, braid_at(alg, braid_at(alg, u, 1, 1, 1),
                                       0, 1, 1), 1, 1, 1)
        if left != right:
            return ctx.fail("braid-equation", (a, b, c), left, right)
    return ctx.ok("braid-equation")


def _chk_beta_mul(ctx) -> Report:
    alg = ctx.alg
    for a, b, c in ctx.triples():
        u = Tensor.basis((a, b, c))
        left = braid_mn(alg, tensor_product(alg.mul_words(a, b),
                                            Tensor.basis((c,))), 1, 1)
        right = _mul_slots(alg, braid_mn(alg, u, 2, 1), 1)
        if left != right:
            return ctx.fail("beta-compat-mul", (a, b, c), left, right,
                            side="mul in the first factor")
        left = braid_mn(alg, tensor_product(Tensor.basis((a,)),
                                            alg.mul_words(b, c)), 1, 1)
        right = _mul_slots(alg, braid_mn(alg, u, 1, 2), 0)
        if left != right:
            return ctx.fail("beta-compat-mul", (a, b, c), left, right,
                            side="mul in the second factor")
    return ctx.ok("beta-compat-mul")


def _chk_beta_unit(ctx) -> Report:
    alg = ctx.alg
    for m in ctx.words():
        left = braid_pair(alg, (), m)
        if left != Tensor.basis((m, ())):
            return ctx.fail("beta-compat-unit", ((), m), left,
                            Tensor.basis((m, ())))
        left = braid_pair(alg, m, ())
        if left != Tensor.basis(((), m)):
            return ctx.fail("beta-compat-unit", (m, ()), left,
                            Tensor.basis(((), m)))
    return ctx.ok("beta-compat-unit")


def _chk_beta_comul(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        u = Tensor.basis((a, b))
        left = _comul_slot(alg, braid_mn(alg, u, 1, 1), 0)
        right = braid_mn(alg, _comul_slot(alg, u, 1), 1, 2)
        if left != right:
            return ctx.fail("beta-compat-comul", (a, b), left, right,
                            side="comul in the first factor")
        left = _comul_slot(alg, braid_mn(alg, u, 1, 1), 1)
        right = braid_mn(alg, _comul_slot(alg, u, 0), 2, 1)
        if left != right:
            return ctx.fail("beta-compat-comul", (a, b), left, right,
                            side="comul in the second factor")
    return ctx.ok("beta-compat-comul")


def _chk_beta_counit(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        u = Tensor.basis((a, b))
        bu = braid_mn(alg, u, 1, 1)
        if _counit_slot(bu, 0) != _counit_slot(u, 1):
            return ctx.fail("beta-compat-counit", (a, b),
                            _counit_slot(bu, 0), _counit_slot(u, 1))
        if _counit_slot(bu, 1) != _counit_slot(u, 0):
            return ctx.fail("beta-compat-counit", (a, b),
                            _counit_slot(bu, 1), _counit_slot(u, 0))
    return ctx.ok("beta-compat-counit")


def _chk_beta_antipode(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        u = Tensor.basis((a, b))
        bu = braid_mn(alg, u, 1, 1)
        left = _map_slot(bu, 0, alg.antipode_word)
        right = braid_mn(alg, _map_slot(u, 1, alg.antipode_word), 1, 1)
        if left != right:
            return ctx.fail("beta-compat-antipode", (a, b), left, right,
                            side="S in the first factor")
        left = _map_slot(bu, 1, alg.antipode_word)
        right = braid_mn(alg, _map_slot(u, 0, alg.antipode_word), 1, 1)
        if left != right:
            return ctx.fail("beta-compat-antipode", (a, b), left, right,
                            side="S in the second factor")
    return ctx.ok("beta-compat-antipode")


def _chk_bialgebra(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        left = comul(alg, alg.mul_words(a, b))
        right = braided_product(alg, comul_word(alg, a), comul_word(alg, b))
        if left != right:
            return ctx.fail("bialgebra", (a, b), left, right)
    return ctx.ok("bialgebra")


def _chk_coassoc(ctx) -> Report:
    alg = ctx.alg
    for w in ctx.words():
        d = comul_word(alg, w)
        left = _comul_slot(alg, d, 0)
        right = _comul_slot(alg, d, 1)
        if left != right:
            return ctx.fail("coassoc", (w,), left, right)
        iterated = comul_iter(alg, Tensor.basis((w,)), 3)
        if iterated != left:
            return ctx.fail("coassoc", (w,), iterated, left,
                            side="iterated comultiplication")
    return ctx.ok("coassoc")


def _chk_counit_law(ctx) -> Report:
    alg = ctx.alg
    for w in ctx.words():
        d = comul_word(alg, w)
        expect = Tensor.basis((w,))
        if _counit_slot(d, 0) != expect or _counit_slot(d, 1) != expect:
            return ctx.fail("counit-law", (w,), _counit_slot(d, 0), expect)
    return ctx.ok("counit-law")


def _chk_counit_mul(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        left = counit(alg.mul_words(a, b))
        right = T_ONE if (a == () and b == ()) else T_ZERO
        if left != right:
            return ctx.fail("counit-mul", (a, b), left, right)
    return ctx.ok("counit-mul")


def _chk_cocommutative(ctx) -> Report:
    alg = ctx.alg
    for w in ctx.words():
        d = comul_word(alg, w)
        bd = braid_mn(alg, d, 1, 1)
        if bd != d:
            return ctx.fail("cocommutative", (w,), bd, d)
    return ctx.ok("cocommutative")


def _chk_involution_squared(ctx) -> Report:
    alg = ctx.alg
    for w in ctx.words():
        twice = alg.involution(alg.involution_word(w))
        if twice != Tensor.basis((w,)):
            return ctx.fail("involution-squared", (w,), twice,
                            Tensor.basis((w,)))
    return ctx.ok("involution-squared")


def _chk_involution_antihom(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        left = alg.involution(alg.mul_words(a, b))
        right = alg.mul(alg.involution_word(b), alg.involution_word(a))
        if left != right:
            return ctx.fail("involution-antihom", (a, b), left, right)
    return ctx.ok("involution-antihom")


def _antipode_conv(alg, w, antipode_first):
    acc = Tensor(1)
    for (k0, k1), v in comul_word(alg, w).terms.items():
        if antipode_first:
            p = alg.mul(alg.antipode_word(k0), Tensor.basis((k1,)))
        else:
            p = alg.mul(Tensor.basis((k0,)), alg.antipode_word(k1))
        for key, c in p.terms.items():
            acc.add_term(key, c * v)
    return acc


def _chk_antipode_identity(ctx) -> Report:
    alg = ctx.alg
    for w in ctx.words():
        expect = alg.one() if w == () else Tensor(1)
        for first in (True, False):
            got = _antipode_conv(alg, w, first)
            if got != expect:
                return ctx.fail("antipode-identity", (w,), got, expect,
                                side="S left" if first else "S right")
    return ctx.ok("antipode-identity")


def _chk_antipode_squared(ctx) -> Report:
    alg = ctx.alg
    for w in ctx.words():
        twice = alg.antipode(alg.antipode_word(w))
        if twice != Tensor.basis((w,)):
            return ctx.fail("antipode-squared", (w,), twice,
                            Tensor.basis((w,)))
    return ctx.ok("antipode-squared")


def _chk_star_tensor_squared(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        u = Tensor.basis((a, b))
        twice = star_tensor(alg, star_tensor(alg, u))
        if twice != u:
            return ctx.fail("star-tensor-squared", (a, b), twice, u)
    return ctx.ok("star-tensor-squared")


def _chk_braiding_reconstruction(ctx) -> Report:
    alg = ctx.alg
    for a, b in ctx.pairs():
        dd = _comul_slot(alg, _comul_slot(alg, Tensor.basis((a, b)), 0), 2)
        out = Tensor(2)
        for (a1, a2, b1, b2), v in dd.terms.items():
            sa = alg.antipode_word(a1)
            sb = alg.antipode_word(b2)
            for (m1, m2), vm in comul(alg, alg.mul_words(a2, b1)).terms.items():
                for (s1,), c1 in sa.terms.items():
                    left = alg.mul_words(s1, m1)
                    for (s2,), c2 in sb.terms.items():
                        right = alg.mul_words(m2, s2)
                        coeff = v * vm * c1 * c2
                        for (lw,), lc in left.terms.items():
                            for (rw,), rc in right.terms.items():
                                out.add_term((lw, rw), coeff * lc * rc)
        expect = braid_pair(alg, a, b)
        if out != expect:
            return ctx.fail("braiding-reconstruction", (a, b), out, expect)
    return ctx.ok("braiding-reconstruction")


# -- generator checks -------------------------------------------------------


def _chk_gen_unit(ctx) -> Report:
    v = ctx.L.on_key(((), ()))
    if v:
        return ctx.fail("gen-unit", ((), ()), v, T_ZERO)
    return ctx.ok("gen-unit")


def _chk_beta_cocycle(ctx) -> Report:
    alg = ctx.alg
    support = [(a, b) for a, b in ctx.pairs() if ctx.L.on_key((a, b))]
    for a, b in support:
        for w in ctx.words():
            into = alg.braid_coeff(w, a) * alg.braid_coeff(w, b)
            outof = alg.braid_coeff(a, w) * alg.braid_coeff(b, w)
            if into != S_ONE or outof != S_ONE:
                return ctx.fail(
                    "beta-compat-cocycle", (w, a, b),
                    str(into if into != S_ONE else outof), "1")
    return ctx.ok("beta-compat-cocycle")


def _chk_gen_commute(ctx) -> Report:
    alg = ctx.alg
    L = ctx.L
    for a, b in ctx.pairs():
        acc_l = Tensor(1)
        acc_r = Tensor(1)
        for k4, v in lambda_n_key(alg, (a, b)).terms.items():
            lv = L.on_key(k4[:2])
            if lv:
                for (mw,), mc in alg.mul_words(k4[2], k4[3]).terms.items():
                    acc_l.add_term((mw,), mc * v * lv)
            rv = L.on_key(k4[2:])
            if rv:
                for (mw,), mc in alg.mul_words(k4[0], k4[1]).terms.items():
                    acc_r.add_term((mw,), mc * v * rv)
        if acc_l != acc_r:
            return ctx.fail("gen-commute", (a, b), acc_l, acc_r)
    return ctx.ok("gen-commute")


def _chk_cocycle(ctx) -> Report:
    for a, b, c in ctx.triples():
        d = cocycle_defect(ctx.L, a, b, c)
        if d:
            return ctx.fail("cocycle", (a, b, c), d, T_ZERO)
    return ctx.ok("cocycle")


def _chk_gen_hermitian(ctx) -> Report:
    alg = ctx.alg
    L = ctx.L
    for a, b in ctx.pairs():
        left = L(tensor_product(alg.involution_word(a),
                                alg.involution_word(b)))
        right = L.on_key((b, a)).conj()
        if left != right:
            return ctx.fail("gen-hermitian", (a, b), left, right)
    return ctx.ok("gen-hermitian")


# -- deformation checks -----------------------------------------------------


def _chk_nilpotency(ctx) -> Report:
    L = ctx.L
    for a, b in ctx.pairs():
        d = len(a) + len(b)
        v = conv_power(L, d + 1).on_key((a, b))
        if v:
            return ctx.fail("nilpotency", (a, b), v, T_ZERO,
                            power=d + 1)
    return ctx.ok("nilpotency")


def _chk_delta_mu_t(ctx) -> Report:
    for a, b in ctx.pairs():
        left = counit(ctx.defm.mu_t_key((a, b)))
        right = ctx.defm.expL_key((a, b))
        if left != right:
            return ctx.fail("delta-mu-t", (a, b), left, right)
    return ctx.ok("delta-mu-t")


def _chk_mu_t_assoc(ctx) -> Report:
    defm = ctx.defm
    for a, b, c in ctx.triples():
        left = defm.mu_t(defm.mu_t_key((a, b)), Tensor.basis((c,)))
        right = defm.mu_t(Tensor.basis((a,)), defm.mu_t_key((b, c)))
        if left != right:
            return ctx.fail("mu-t-assoc", (a, b, c), left, right)
    return ctx.ok("mu-t-assoc")


def _chk_mu_t_assoc_eq3(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm

    def exp_mul_right(k3):
        tot = T_ZERO
        for (mw,), mc in alg.mul_words(k3[1], k3[2]).terms.items():
            e = defm.expL_key((k3[0], mw))
            if e:
                tot = tot + mc * e
        return tot

    def exp_mul_left(k3):
        tot = T_ZERO
        for (mw,), mc in alg.mul_words(k3[0], k3[1]).terms.items():
            e = defm.expL_key((mw, k3[2]))
            if e:
                tot = tot + mc * e
        return tot

    for a, b, c in ctx.small_triples():
        lhs = T_ZERO
        rhs = T_ZERO
        for k6, v in lambda_n_key(alg, (a, b, c)).terms.items():
            u1, u2 = k6[:3], k6[3:]
            if u2[0] == ():
                f = exp_mul_right(u1)
                if f:
                    lhs = lhs + v * f * defm.expL_key(u2[1:])
            if u2[2] == ():
                f = exp_mul_left(u1)
                if f:
                    rhs = rhs + v * f * defm.expL_key(u2[:2])
        if lhs != rhs:
            return ctx.fail("mu-t-assoc-eq3", (a, b, c), lhs, rhs)
    return ctx.ok("mu-t-assoc-eq3")


def _chk_deformation_law(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for a, b in ctx.pairs():
        splits = lambda_n_key(alg, (a, b)).terms.items()
        formal = defm.mu_t_key((a, b))
        for t0 in GRID:
            for s0 in GRID:
                left = comul(alg, formal.substitute(t0 + s0))
                right = Tensor(2)
                for k4, v in splits:
                    mt = defm.mu_t_key(k4[:2]).substitute(t0)
                    ms = defm.mu_t_key(k4[2:]).substitute(s0)
                    for (w1,), c1 in mt.terms.items():
                        for (w2,), c2 in ms.terms.items():
                            right.add_term((w1, w2), v * c1 * c2)
                if left != right:
                    return ctx.fail("deformation-law", (a, b), left, right,
                                    t=t0, s=s0)
    return ctx.ok("deformation-law")


def _chk_star_deformation(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for a, b in ctx.pairs():
        left = defm.mu_t(tensor_product(alg.involution_word(b),
                                        alg.involution_word(a)))
        right = alg.involution(defm.mu_t_key((a, b)))
        if left != right:
            return ctx.fail("star-deformation", (a, b), left, right)
    return ctx.ok("star-deformation")


def _chk_expL_semigroup(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for a, b in ctx.pairs():
        splits = lambda_n_key(alg, (a, b)).terms.items()
        whole = defm.expL_key((a, b))
        for t0 in GRID:
            for s0 in GRID:
                right = whole.eval(t0 + s0)
                left = S_ZERO
                for k4, v in splits:
                    e1 = defm.expL_key(k4[:2]).eval(t0)
                    if not e1:
                        continue
                    e2 = defm.expL_key(k4[2:]).eval(s0)
                    if e2:
                        left = left + v.eval(t0) * e1 * e2
                if left != right:
                    return ctx.fail("expL-semigroup", (a, b),
                                    str(left), str(right), t=t0, s=s0)
    return ctx.ok("expL-semigroup")


def _chk_expL_hermitian(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for a, b in ctx.pairs():
        starred = tensor_product(alg.involution_word(a),
                                 alg.involution_word(b))
        left_poly = T_ZERO
        for key, c in starred.terms.items():
            e = defm.expL_key(key)
            if e:
                left_poly = left_poly + e * c
        right_poly = defm.expL_key((b, a))
        for t0 in HERMITIAN_SAMPLES:
            left = left_poly.eval(t0)
            right = right_poly.eval(t0).conj()
            if left != right:
                return ctx.fail("expL-hermitian", (a, b),
                                str(left), str(right), t=t0)
    return ctx.ok("expL-hermitian")


def _chk_primitive_formula(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for g in range(len(ctx.pres.generators)):
        for h in range(len(ctx.pres.generators)):
            a, b = (g,), (h,)
            expect = alg.mul_words(a, b)
            lv = ctx.L.on_key((a, b))
            if lv:
                expect = expect + alg.one().scale(TPoly.term(S_ONE, 1) * lv)
            got = defm.mu_t_key((a, b))
            if got != expect:
                return ctx.fail("primitive-formula", (a, b), got, expect)
    return ctx.ok("primitive-formula")


# -- deformed Hopf checks ---------------------------------------------------


def _chk_sigma_two_sided(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for w in ctx.words():
        left = defm.sigma_word(w)
        right = T_ZERO
        for (k0, k1), v in comul_word(alg, w).terms.items():
            for (sk,), sc in alg.antipode_word(k1).terms.items():
                lv = ctx.L.on_key((k0, sk))
                if lv:
                    right = right + v * sc * lv
        if left != right:
            return ctx.fail("sigma-two-sided", (w,), left, right)
    return ctx.ok("sigma-two-sided")


def _chk_ft_agreement(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for w in ctx.words():
        mid = defm.ft_key(w)
        left = T_ZERO
        right = T_ZERO
        for (k0, k1), v in comul_word(alg, w).terms.items():
            for (sk,), sc in alg.antipode_word(k0).terms.items():
                e = defm.expL_key((sk, k1))
                if e:
                    left = left + v * sc * e
            for (sk,), sc in alg.antipode_word(k1).terms.items():
                e = defm.expL_key((k0, sk))
                if e:
                    right = right + v * sc * e
        if left != mid or right != mid:
            return ctx.fail("ft-agreement", (w,),
                            left if left != mid else right, mid)
    return ctx.ok("ft-agreement")


def _chk_ft_commute(ctx) -> Report:
    defm = ctx.defm
    ft = Functional(ctx.alg, 1, lambda key: defm.ft_key(key[0]), name="F_t")
    left = conv_map(functional_map(ft), identity_map(ctx.alg))
    right = conv_map(identity_map(ctx.alg), functional_map(ft))
    for w in ctx.words():
        lv = left.on_word(w)
        rv = right.on_word(w)
        if lv != rv:
            return ctx.fail("ft-commute", (w,), lv, rv)
    return ctx.ok("ft-commute")


def _chk_antipode_deformed(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for w in ctx.words():
        expect = alg.one() if w == () else Tensor(1)
        for st_first in (False, True):
            acc = Tensor(1)
            for (k0, k1), v in comul_word(alg, w).terms.items():
                if st_first:
                    m = defm.mu_t(defm.st_word(k0), Tensor.basis((k1,)))
                else:
                    m = defm.mu_t(Tensor.basis((k0,)), defm.st_word(k1))
                for key, c in m.terms.items():
                    acc.add_term(key, c * v)
            if acc != expect:
                return ctx.fail("antipode-deformed", (w,), acc, expect,
                                side="S_t left" if st_first else "S_t right")
    return ctx.ok("antipode-deformed")


def _chk_st_unit(ctx) -> Report:
    got = ctx.defm.st_word(())
    if got != ctx.alg.one():
        return ctx.fail("st-unit", ((),), got, ctx.alg.one())
    return ctx.ok("st-unit")


def _chk_st_mu(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for a, b in ctx.pairs():
        left = defm.st(_flip_t(defm.mu_t_key((a, b))))
        k = alg.braid_coeff(a, b)
        right = defm.mu_t(
            tensor_product(defm.st_word(b), defm.st_word(a)).scale(k))
        if left != right:
            return ctx.fail("st-mu", (a, b), left, right)
    return ctx.ok("st-mu")


def _chk_st_comul(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for w in ctx.words():
        formal = defm.st_word(w)
        splits = comul_word(alg, w).terms.items()
        for t0 in GRID:
            for r0 in GRID:
                left = comul(alg, formal.substitute(t0 + r0))
                right = Tensor(2)
                for (k0, k1), v in splits:
                    k = alg.braid_coeff(k0, k1)
                    st_1 = defm.st_word(k1).substitute(t0)
                    st_2 = defm.st_word(k0).substitute(r0)
                    for (w1,), c1 in st_1.terms.items():
                        for (w2,), c2 in st_2.terms.items():
                            right.add_term((w1, w2), v * k * c1 * c2)
                if left != right:
                    return ctx.fail("st-comul", (w,), left, right,
                                    t=t0, r=r0)
    return ctx.ok("st-comul")


def _chk_st_inverse(ctx) -> Report:
    defm = ctx.defm
    for w in ctx.words():
        inner = _flip_t(defm.st_word(w))
        got = defm.st(inner)
        if got != Tensor.basis((w,)):
            return ctx.fail("st-inverse", (w,), got, Tensor.basis((w,)))
    return ctx.ok("st-inverse")


def _chk_st_star(ctx) -> Report:
    alg = ctx.alg
    defm = ctx.defm
    for w in ctx.words():
        step = defm.st(alg.involution_word(w))
        step = alg.involution(step)
        got = defm.st(step, time_sign=-1)
        if got != Tensor.basis((w,)):
            return ctx.fail("st-star", (w,), got, Tensor.basis((w,)))
    return ctx.ok("st-star")


# -- sesquilinear checks ----------------------------------------------------


def _delta_mul_functional(ctx) -> Functional:
    alg = ctx.alg
    return Functional(
        alg, 2, lambda k: alg.mul_words(k[0], k[1]).coefficient(((),)),
        name="delta.mul")


def _chk_sesqui_conv(ctx) -> Report:
    L = ctx.L
    M = _delta_mul_functional(ctx)
    for K in (L, M):
        plain = sesquilinearize(convolve_fn(M if K is L else L, K))
        tilded = conv_sesqui(sesquilinearize(M if K is L else L),
                             sesquilinearize(K))
        for a, b in ctx.pairs():
            lv = plain.on_words(a, b)
            rv = tilded.on_words(a, b)
            if lv != rv:
                return ctx.fail("sesqui-conv", (a, b), lv, rv)
    return ctx.ok("sesqui-conv")


def _chk_sesqui_hermitian(ctx) -> Report:
    form = sesquilinearize(ctx.L)
    for w in ctx.words():
        v = form.on_words(w, w)
        if v != v.conj():
            return ctx.fail("sesqui-hermitian", (w,), v, v.conj())
    return ctx.ok("sesqui-hermitian")


# -- the catalog ------------------------------------------------------------

_BASE = ("confluence", "quotient-compat")
_GEN = ("gen-unit", "beta-compat-cocycle", "gen-commute", "cocycle",
        "gen-hermitian")

CATALOG = (
    ("confluence", (), _chk_confluence),
    ("quotient-compat", ("confluence",), _chk_quotient),
    ("assoc-mul", _BASE, _chk_assoc_mul),
    ("braid-equation", _BASE, _chk_braid_equation),
    ("beta-compat-mul", _BASE, _chk_beta_mul),
    ("beta-compat-unit", _BASE, _chk_beta_unit),
    ("beta-compat-comul", _BASE, _chk_beta_comul),
    ("beta-compat-counit", _BASE, _chk_beta_counit),
    ("beta-compat-antipode", _BASE, _chk_beta_antipode),
    ("bialgebra", _BASE, _chk_bialgebra),
    ("coassoc", _BASE, _chk_coassoc),
    ("counit-law", _BASE, _chk_counit_law),
    ("counit-mul", _BASE, _chk_counit_mul),
    ("cocommutative", _BASE, _chk_cocommutative),
    ("involution-squared", _BASE, _chk_involution_squared),
    ("involution-antihom", _BASE, _chk_involution_antihom),
    ("antipode-identity", _BASE, _chk_antipode_identity),
    ("antipode-squared", _BASE + ("cocommutative",), _chk_antipode_squared),
    ("star-tensor-squared", _BASE, _chk_star_tensor_squared),
    ("braiding-reconstruction", _BASE, _chk_braiding_reconstruction),
    ("gen-unit", _BASE, _chk_gen_unit),
    ("beta-compat-cocycle", _BASE, _chk_beta_cocycle),
    ("gen-commute", _BASE, _chk_gen_commute),
    ("cocycle", _BASE, _chk_cocycle),
    ("gen-hermitian", _BASE, _chk_gen_hermitian),
    ("nilpotency", _BASE + _GEN, _chk_nilpotency),
    ("delta-mu-t", _BASE + _GEN, _chk_delta_mu_t),
    ("mu-t-assoc", _BASE + _GEN, _chk_mu_t_assoc),
    ("mu-t-assoc-eq3", _BASE + _GEN, _chk_mu_t_assoc_eq3),
    ("deformation-law", _BASE + _GEN, _chk_deformation_law),
    ("star-deformation", _BASE + _GEN, _chk_star_deformation),
    ("expL-semigroup", _BASE + _GEN, _chk_expL_semigroup),
    ("expL-hermitian", _BASE + _GEN, _chk_expL_hermitian),
    ("primitive-formula", _BASE + _GEN, _chk_primitive_formula),
    ("sigma-two-sided", _BASE + _GEN, _chk_sigma_two_sided),
    ("ft-agreement", _BASE + _GEN, _chk_ft_agreement),
    ("ft-commute", _BASE + _GEN, _chk_ft_commute),
    ("antipode-deformed", _BASE + _GEN, _chk_antipode_deformed),
    ("st-unit", _BASE + _GEN, _chk_st_unit),
    ("st-mu", _BASE + _GEN, _chk_st_mu),
    ("st-comul", _BASE + _GEN, _chk_st_comul),
    ("st-inverse", _BASE + _GEN + ("cocommutative",), _chk_st_inverse),
    ("st-star", _BASE + _GEN, _chk_st_star),
    ("sesqui-conv", _BASE + _GEN, _chk_sesqui_conv),
    ("sesqui-hermitian", _BASE + _GEN, _chk_sesqui_hermitian),
)

CHECK_IDS = tuple(cid for cid, _, _ in CATALOG)


def run_catalog(pres: AlgebraPresentation, ids=None,
                max_degree: int = 4) -> list:
    """Run the selected checks (all by default) in catalog order.

    A check is skipped when a prerequisite in the same run did not pass;
    prerequisites not selected are taken as satisfied.
    """
    if ids is None:
        selected = set(CHECK_IDS)
    else:
        selected = set(ids)
        unknown = selected - set(CHECK_IDS)
        if unknown:
            raise ValueError(
                "unknown check id(s): " + ", ".join(sorted(unknown)))
    ctx = VerifyContext(pres, max_degree)
    status = {}
    reports = []
    for cid, needs, fn in CATALOG:
        if cid not in selected:
            continue
        blocker = next(
            (n for n in needs if status.get(n, "pass") != "pass"), None)
        if blocker is not None:
            rep = Report(cid, "skipped", max_degree,
                         {"reason": f"requires {blocker}"})
        else:
            rep = fn(ctx)
        status[cid] = rep.status
        reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# exact positive semidefiniteness


class HermitianMatrix:
    """Square matrix of Scalars with entry (j,i) = conj(entry (i,j))."""

    __slots__ = ("entries",)

    def __init__(self, rows):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        n = len(entries)
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i, n):
                if entries[j][i] != entries[i][j].conj():
                    raise ValueError(
                        f"matrix is not hermitian at ({i}, {j})")
        self.entries = entries

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def quadratic_form(self, v) -> Scalar:
        """v* G v for a vector of Scalars."""
        tot = Scalar(0)
        for i, vi in enumerate(v):
            for j, vj in enumerate(v):
                tot = tot + vi.conj() * self.entries[i][j] * vj
        return tot


def psd_exact(G: HermitianMatrix):
    """('psd', None) or ('not-psd', witness) with witness* G witness < 0,
    decided by recursive pivoting over exact scalars."""
    return _psd([list(row) for row in G.entries])


def _psd(m):
    n = len(m)
    if n == 0:
        return ("psd", None)
    a = m[0][0]
    if a.re < 0:
        return ("not-psd", (S_ONE,) + (S_ZERO,) * (n - 1))
    if not a:
        j = next((k for k in range(1, n) if m[0][k]), None)
        if j is None:
            verdict, wit = _psd([row[1:] for row in m[1:]])
            if wit is None:
                return (verdict, None)
            return ("not-psd", (S_ZERO,) + wit)
        b = m[0][j]
        d = m[j][j].re
        s = Fraction(-1) if d <= 0 else -1 / d
        wit = [S_ZERO] * n
        wit[0] = S_ONE
        wit[j] = b.conj() * Scalar(s)
        return ("not-psd", tuple(wit))
    sub = [[m[i][k] - m[i][0] * m[0][k] / a for k in range(1, n)]
           for i in range(1, n)]
    verdict, wit = _psd(sub)
    if wit is None:
        return ("psd", None)
    r_dot_y = Scalar(0)
    for k, yk in enumerate(wit):
        r_dot_y = r_dot_y + m[0][k + 1] * yk
    return ("not-psd", (-(r_dot_y / a),) + wit)


# ---------------------------------------------------------------------------
# the positivity checker


class SchoenbergError(ValueError):
    """A hypothesis on psi failed; carries which one."""

    def __init__(self, message: str, hypothesis: str):
        super().__init__(message)
        self.hypothesis = hypothesis


@dataclass
class SchoenbergResult:
    conditional: Report
    states: list
    equivalence_observed: bool

    def ok(self) -> bool:
        return self.conditional.ok() and all(r.ok() for r in self.states)

    def reports(self) -> list:
        return [self.conditional] + list(self.states)


def parse_psi(text: str, pres: AlgebraPresentation) -> dict:
    """Support table file: a [psi] header and 'word = scalar' lines."""
    names = {g: k for k, g in enumerate(pres.generators)}
    lhs_set = {r.lhs for r in pres.rules}
    table = {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"^\[([a-z-]+)\]\s*(.*)$", line)
        if m:
            if m.group(1) != "psi" or seen_header:
                raise PresentationError(
                    f"expected a single [psi] section, got [{m.group(1)}]",
                    lineno)
            seen_header = True
            line = m.group(2).strip()
            if not line:
                continue
        if not seen_header:
            raise PresentationError("content before [psi]", lineno)
        if "=" not in line:
            raise PresentationError("expected 'word = scalar'", lineno)
        key_text, val_text = (s.strip() for s in line.split("=", 1))
        word = []
        for tok in key_text.split():
            if tok not in names:
                raise PresentationError(f"unknown generator {tok!r}", lineno)
            word.append(names[tok])
        word = tuple(word)
        if not word:
            raise PresentationError("psi keys must not be the unit", lineno)
        if any((word[k], word[k + 1]) in lhs_set
               for k in range(len(word) - 1)):
            raise PresentationError(
                "psi keys must be normal-form monomials", lineno)
        if word in table:
            raise PresentationError("duplicate psi key", lineno)
        try:
            table[word] = Scalar.parse(val_text)
        except ValueError as exc:
            raise PresentationError(str(exc), lineno) from None
    if not seen_header:
        raise PresentationError("missing [psi] section")
    return table


def _constant(p: TPoly) -> Scalar:
    if p.degree() > 0:
        raise ValueError("expected a t-free value")
    return p.constant_term()


def schoenberg_check(source, psi=None, max_degree: int = 4,
                     t_samples=(Fraction(0), Fraction(1, 2), Fraction(1),
                                Fraction(2))) -> SchoenbergResult:
    """Conditional positivity of psi.mul + L over ker delta, plus the state
    property of the exponential family at each sample point.

    psi may be a support table (dict), an arity-1 Functional, or None for
    the zero functional.  The three hypotheses on psi are verified first
    and raise SchoenbergError when violated.
    """
    alg = source if isinstance(source, Algebra) else Algebra(source)
    pres = alg.pres
    if psi is None:
        psi = psi_functional(alg, {})
    elif isinstance(psi, dict):
        psi = psi_functional(alg, psi)
    elif psi.arity != 1:
        raise ValueError("psi must have arity 1")
    basis = alg.basis(max_degree)

    # hypothesis gates, in order: hermitian, braiding-invariant, psi(1) = 0
    for w in basis:
        starred = T_ZERO
        for (iw,), ic in alg.involution_word(w).terms.items():
            v = psi.on_key((iw,))
            if v:
                starred = starred + ic * v
        if starred != psi.on_key((w,)).conj():
            raise SchoenbergError(
                f"psi is not hermitian at {pres.word_str(w)}", "hermitian")
    for v in basis:
        if not psi.on_key((v,)):
            continue
        for w in basis:
            if (alg.braid_coeff(w, v) != S_ONE
                    or alg.braid_coeff(v, w) != S_ONE):
                raise SchoenbergError(
                    f"psi is not braiding-invariant at {pres.word_str(v)}",
                    "braiding-invariant")
    if psi.on_key(((),)):
        raise SchoenbergError("psi(1) must vanish", "unit")

    defm = Deformation(alg)

    def k_words(wa, wb):
        tot = defm.L.on_key((wa, wb))
        for (mw,), mc in alg.mul_words(wa, wb).terms.items():
            v = psi.on_key((mw,))
            if v:
                tot = tot + mc * v
        return tot

    # (a) conditional positivity over ker delta
    kerdelta = [w for w in basis if w]
    rows = []
    for bi in kerdelta:
        istar = alg.involution_word(bi)
        row = []
        for bj in kerdelta:
            tot = T_ZERO
            for (iw,), ic in istar.terms.items():
                v = k_words(iw, bj)
                if v:
                    tot = tot + ic * v
            row.append(_constant(tot))
        rows.append(row)
    try:
        gram = HermitianMatrix(rows)
    except ValueError as exc:
        raise SchoenbergError(
            f"conditional Gram matrix is not hermitian ({exc})",
            "hermitian") from None
    verdict, wit = psd_exact(gram)
    if verdict == "psd":
        conditional = Report("schoenberg-conditional", "pass", max_degree)
    else:
        conditional = Report(
            "schoenberg-conditional", "fail", max_degree,
            {"witness": _witness_element(alg, kerdelta, wit),
             "form-value": str(gram.quadratic_form(wit))})

    # (b) the state property at each sample
    states = []
    for t0 in t_samples:
        phi_vals = {}

        def phi(word):
            v = phi_vals.get(word)
            if v is None:
                v = conv_exp_key(psi, (word,)).eval(t0)
                phi_vals[word] = v
            return v

        if phi(()) != S_ONE:
            states.append(Report(
                "schoenberg-state", "fail", max_degree,
                {"t": str(t0), "witness": "1",
                 "reason": "phi_t(1) != 1"}))
            continue
        rows = []
        for bi in basis:
            istar = alg.involution_word(bi)
            row = []
            for bj in basis:
                tot = S_ZERO
                for (iw,), ic in istar.terms.items():
                    prod = defm.mu_t_key((iw, bj)).substitute(t0)
                    for (pw,), pc in prod.terms.items():
                        f = phi(pw)
                        if f:
                            tot = tot + _constant(ic) * _constant(pc) * f
                row.append(tot)
            rows.append(row)
        try:
            gram = HermitianMatrix(rows)
        except ValueError as exc:
            raise SchoenbergError(
                f"state Gram matrix is not hermitian ({exc})",
                "hermitian") from None
        verdict, wit = psd_exact(gram)
        if verdict == "psd":
            states.append(Report("schoenberg-state", "pass", max_degree,
                                 {"t": str(t0)}))
        else:
            states.append(Report(
                "schoenberg-state", "fail", max_degree,
                {"t": str(t0),
                 "witness": _witness_element(alg, basis, wit),
                 "form-value": str(gram.quadratic_form(wit))}))

    nonneg = [r for t0, r in zip(t_samples, states) if t0 >= 0]
    equivalence = conditional.ok() == all(r.ok() for r in nonneg)
    return SchoenbergResult(conditional, states, equivalence)


def _witness_element(alg, labels, wit) -> str:
    out = Tensor(1)
    for w, c in zip(labels, wit):
        out.add_term((w,), TPoly((c,)) if c else T_ZERO)
    return alg.format(out)


# ---------------------------------------------------------------------------
# the diagonal-braiding obstruction


def q_presentation(q: Scalar) -> AlgebraPresentation:
    """The one-parameter diagonal-braiding presentation at a concrete q,
    with the cocycle that realizes mu_t(x (x) xs - q xs (x) x) = t 1."""
    from .presentation import Rule

    q = as_scalar(q)
    if not q:
        raise ValueError("q must be nonzero")
    qinv = q.inv()
    return AlgebraPresentation(
        name="q-family",
        generators=("x", "xs"),
        grades=(1, 1),
        star=(1, 0),
        braiding_kind="diagonal",
        braiding_table=((q, q), (qinv, qinv)),
        rules=(Rule(lhs=(1, 0), rhs=(((0, 1), qinv),)),),
        cocycle=(((0,), (1,), Scalar(1)),),
        antipode=((((0,), Scalar(-1)),), (((1,), Scalar(-1)),)),
    )


def qnogo_eval(q, t_val=Fraction(1)):
    """Both sides of the module-map obstruction for the braiding at q:
    (mu_t (x) id).(id (x) b).(b (x) id) versus b.(id (x) mu_t), applied to
    x (x) (x (x) xs - q xs (x) x).  They agree exactly when q^2 = 1."""
    q = as_scalar(q)
    if not q:
        raise ValueError("q must be nonzero")
    pres = q_presentation(q)
    alg = Algebra(pres)
    defm = Deformation(alg)

    expr = Tensor(3)
    expr.add_term(((0,), (0,), (1,)), T_ONE)
    expr.add_term(((0,), (1,), (0,)), TPoly((-q,)))

    u = braid_at(alg, expr, 0, 1, 1)
    u = braid_at(alg, u, 1, 1, 1)
    lhs = Tensor(2)
    for (k0, k1, k2), c in u.terms.items():
        for (mw,), mc in defm.mu_t_key((k0, k1)).terms.items():
            lhs.add_term((mw, k2), c * mc)

    v = Tensor(2)
    for (k0, k1, k2), c in expr.terms.items():
        for (mw,), mc in defm.mu_t_key((k1, k2)).terms.items():
            v.add_term((k0, mw), c * mc)
    rhs = braid_mn(alg, v, 1, 1)

    return lhs.substitute(t_val), rhs.substitute(t_val)
