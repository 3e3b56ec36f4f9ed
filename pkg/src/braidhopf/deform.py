"""Deformed products from convolution exponentials of a generating cocycle.

A generator L (an arity-2 functional) deforms the product of a presented
algebra through

    mu_t = (mul (x) e*^{tL}) . Lambda_2,

with t kept as a formal polynomial variable throughout.  The module also
builds sigma = L . (S (x) id) . comul, the deformed antipode
S_t = S * e*^{-t sigma}, and the sesquilinear counterparts used by the
positivity checks.  Everything evaluates to exact TPoly values; the
convolution exponential truncates by the total-degree bound (the k-th
convolution power kills tuples of total degree < k once the functional
vanishes on the unit tuple, which is enforced).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import Algebra, Tensor, tensor_product
from .braidtensor import comul_word, lambda_n_key
from .scalars import Scalar, TPoly, T_ONE, T_ZERO, as_tpoly


# ---------------------------------------------------------------------------
# functionals


class Functional:
    """Linear functional on rank-n tensors, memoized on basis slot-tuples.

    trivial marks a functional known to vanish identically, which lets the
    convolution machinery collapse exponentials to counits instead of
    walking comultiplication splits to add up zeros.
    """

    __slots__ = ("alg", "arity", "name", "trivial", "_fn", "_memo", "_exp",
                 "_powers")

    def __init__(self, alg: Algebra, arity: int, fn, name: str = "F",
                 trivial: bool = False):
        self.alg = alg
        self.arity = arity
        self.name = name
        self.trivial = trivial
        self._fn = fn
        self._memo = {}
        self._exp = {}
        self._powers = None

    def on_key(self, key) -> TPoly:
        v = self._memo.get(key)
        if v is None:
            v = as_tpoly(self._fn(key))
            self._memo[key] = v
        return v

    def __call__(self, u: Tensor) -> TPoly:
        return eval_functional(self, u)

    def __repr__(self):
        return f"Functional({self.name}, arity={self.arity})"


def eval_functional(F: Functional, u: Tensor) -> TPoly:
    if u.rank != F.arity:
        raise ValueError(
            f"arity mismatch: functional takes rank {F.arity}, got {u.rank}")
    tot = T_ZERO
    for key, c in u.terms.items():
        v = F.on_key(key)
        if v:
            tot = tot + v * c
    return tot


def counit_functional(alg: Algebra, arity: int = 1) -> Functional:
    unit = ((),) * arity
    return Functional(alg, arity,
                      lambda key: T_ONE if key == unit else T_ZERO,
                      name="delta" if arity == 1 else f"delta^{arity}")


def zero_functional(alg: Algebra, arity: int, name: str = "0") -> Functional:
    return Functional(alg, arity, lambda k: T_ZERO, name=name, trivial=True)


def table_functional(alg: Algebra, table: dict, arity: int,
                     name: str = "table") -> Functional:
    """Finite-support functional; keys are tuples of normal words."""
    tab = {}
    for key, val in table.items():
        key = tuple(tuple(w) for w in key)
        if len(key) != arity:
            raise ValueError(f"table key {key!r} does not have arity {arity}")
        val = as_tpoly(val)
        if val:
            tab[key] = val
    if not tab:
        return zero_functional(alg, arity, name=name)
    return Functional(alg, arity, lambda k: tab.get(k, T_ZERO), name=name)


def cocycle_functional(alg: Algebra) -> Functional:
    """The generator L read off the presentation's cocycle table."""
    table = {(l, r): c for l, r, c in alg.pres.cocycle}
    return table_functional(alg, table, 2, name="L")


def psi_functional(alg: Algebra, table: dict) -> Functional:
    """Arity-1 support-table functional (for Schoenberg-style inputs)."""
    return table_functional(alg, {(w,): c for w, c in table.items()}, 1,
                            name="psi")


def convolve_fn(F: Functional, G: Functional) -> Functional:
    """Convolution w.r.t. the rank-n comultiplication Lambda_n."""
    if F.alg is not G.alg:
        raise ValueError("functionals live over different algebras")
    if F.arity != G.arity:
        raise ValueError("convolution needs equal arities")
    n = F.arity
    alg = F.alg
    if F.trivial or G.trivial:
        return zero_functional(alg, n, name=f"({F.name} * {G.name})")

    def conv(key):
        tot = T_ZERO
        for k2, v in lambda_n_key(alg, key).terms.items():
            a = F.on_key(k2[:n])
            if not a:
                continue
            b = G.on_key(k2[n:])
            if b:
                tot = tot + v * a * b
        return tot

    return Functional(alg, n, conv, name=f"({F.name} * {G.name})")


def conv_power(F: Functional, k: int) -> Functional:
    """The k-th convolution power of F (k = 0 is the rank-n counit)."""
    if F._powers is None:
        F._powers = [counit_functional(F.alg, F.arity), F]
    while len(F._powers) <= k:
        F._powers.append(convolve_fn(F, F._powers[-1]))
    return F._powers[k]


def conv_exp_key(F: Functional, key) -> TPoly:
    """e*^{tF} on a basis slot-tuple, formal in t."""
    cached = F._exp.get(key)
    if cached is not None:
        return cached
    if F.trivial:
        v = T_ONE if all(w == () for w in key) else T_ZERO
        F._exp[key] = v
        return v
    if F.on_key(((),) * F.arity):
        raise ValueError(
            "convolution exponential requires the functional to vanish on "
            "the unit tuple")
    d = sum(len(w) for w in key)
    tot = T_ZERO
    for k in range(d + 1):
        pk = conv_power(F, k).on_key(key)
        if pk:
            tot = tot + TPoly.term(Scalar(Fraction(1, factorial(k))), k) * pk
    F._exp[key] = tot
    return tot


def conv_exp(F: Functional, u: Tensor, time_sign: int = 1) -> TPoly:
    """e*^{tF}(u) (or e*^{-tF}(u) for time_sign = -1), exact in t."""
    if u.rank != F.arity:
        raise ValueError(
            f"arity mismatch: functional takes rank {F.arity}, got {u.rank}")
    tot = T_ZERO
    for key, c in u.terms.items():
        e = conv_exp_key(F, key)
        if not e:
            continue
        if time_sign < 0:
            e = e.flip_sign()
        tot = tot + e * c
    return tot


# ---------------------------------------------------------------------------
# maps out of the rank-1 coalgebra and their convolution


class MapNode:
    """Linear map from the algebra into itself (or into scalars), given by
    its action on basis words and extended linearly."""

    __slots__ = ("alg", "scalar_valued", "name", "_fn", "_memo")

    def __init__(self, alg: Algebra, fn, scalar_valued: bool = False,
                 name: str = "map"):
        self.alg = alg
        self.scalar_valued = scalar_valued
        self.name = name
        self._fn = fn
        self._memo = {}

    def on_word(self, w):
        v = self._memo.get(w)
        if v is None:
            v = self._fn(w)
            self._memo[w] = v
        return v

    def __call__(self, u: Tensor):
        if u.rank != 1:
            raise ValueError("map nodes act on rank-1 tensors")
        if self.scalar_valued:
            tot = T_ZERO
            for (w,), c in u.terms.items():
                v = self.on_word(w)
                if v:
                    tot = tot + v * c
            return tot
        out = Tensor(1)
        for (w,), c in u.terms.items():
            for key, v in self.on_word(w).terms.items():
                out.add_term(key, v * c)
        return out

    def __repr__(self):
        return f"MapNode({self.name})"


def identity_map(alg: Algebra) -> MapNode:
    return MapNode(alg, lambda w: Tensor.basis((w,)), name="id")


def antipode_map(alg: Algebra) -> MapNode:
    return MapNode(alg, alg.antipode_word, name="S")


def unit_counit_map(alg: Algebra) -> MapNode:
    """1 delta: the unit of map convolution."""
    return MapNode(alg, lambda w: alg.one() if w == () else Tensor(1),
                   name="1delta")


def functional_map(F: Functional) -> MapNode:
    """An arity-1 functional viewed as a scalar-valued map node."""
    if F.arity != 1:
        raise ValueError("only arity-1 functionals convolve with maps")
    return MapNode(F.alg, lambda w: F.on_key((w,)), scalar_valued=True,
                   name=F.name)


def conv_map(f: MapNode, g: MapNode) -> MapNode:
    """Convolution mul . (f (x) g) . comul; scalar factors act by scaling."""
    if f.alg is not g.alg:
        raise ValueError("map nodes live over different algebras")
    alg = f.alg
    scalar = f.scalar_valued and g.scalar_valued

    def fn(w):
        out = T_ZERO if scalar else Tensor(1)
        for (k0, k1), v in comul_word(alg, w).terms.items():
            a = f.on_word(k0)
            b = g.on_word(k1)
            if scalar:
                out = out + v * a * b
            elif f.scalar_valued:
                out = out + b.scale(v * a)
            elif g.scalar_valued:
                out = out + a.scale(v * b)
            else:
                out = out + alg.mul(a, b).scale(v)
        return out

    return MapNode(alg, fn, scalar_valued=scalar,
                   name=f"({f.name} * {g.name})")


# ---------------------------------------------------------------------------
# the deformation context


class Deformation:
    """All structure derived from one generator L over one algebra.

    Values are memoized per basis input with t formal; negative time and
    rational time points come from sign-flipping resp. substituting the
    memoized polynomials, so each basis computation happens once.
    """

    def __init__(self, alg: Algebra, L: Functional | None = None):
        self.alg = alg
        self.L = L if L is not None else cocycle_functional(alg)
        if self.L.arity != 2:
            raise ValueError("the generator must have arity 2")
        self._mu = {}
        self._sigma = {}
        self._sigma_fn = None
        self._st = {}

    # -- the deformed product ---------------------------------------------

    def expL_key(self, key) -> TPoly:
        return conv_exp_key(self.L, key)

    def mu_t_key(self, key) -> Tensor:
        """mu_t on a basis pair, formal in t."""
        cached = self._mu.get(key)
        if cached is not None:
            return cached
        if self.L.trivial:
            # the exponential degenerates to the counit pair, which picks
            # the identity split out of Lambda_2
            out = self.alg.mul_words(key[0], key[1])
            self._mu[key] = out
            return out
        out = Tensor(1)
        for k2, v in lambda_n_key(self.alg, key).terms.items():
            e = self.expL_key(k2[2:])
            if not e:
                continue
            for (pw,), pc in self.alg.mul_words(k2[0], k2[1]).terms.items():
                out.add_term((pw,), pc * v * e)
        self._mu[key] = out
        return out

    def mu_t(self, u: Tensor, v: Tensor | None = None,
             time_sign: int = 1) -> Tensor:
        """mu_t (or mu_{-t}) of a rank-2 tensor, or of a pair of elements."""
        if v is not None:
            u = tensor_product(u, v)
        if u.rank != 2:
            raise ValueError("mu_t consumes rank-2 tensors")
        out = Tensor(1)
        for key, c in u.terms.items():
            for k, val in self.mu_t_key(key).terms.items():
                if time_sign < 0:
                    val = val.flip_sign()
                out.add_term(k, val * c)
        return out

    # -- sigma and the deformed antipode ----------------------------------

    def sigma_word(self, w) -> TPoly:
        """sigma = L . (S (x) id) . comul on a basis word."""
        cached = self._sigma.get(w)
        if cached is not None:
            return cached
        tot = T_ZERO
        for (k0, k1), v in comul_word(self.alg, w).terms.items():
            for (sk,), sc in self.alg.antipode_word(k0).terms.items():
                lv = self.L.on_key((sk, k1))
                if lv:
                    tot = tot + v * sc * lv
        self._sigma[w] = tot
        return tot

    def sigma_functional(self) -> Functional:
        if self._sigma_fn is None:
            if self.L.trivial:
                self._sigma_fn = zero_functional(self.alg, 1, name="sigma")
            else:
                self._sigma_fn = Functional(
                    self.alg, 1, lambda key: self.sigma_word(key[0]),
                    name="sigma")
        return self._sigma_fn

    def ft_key(self, w, time_sign: int = 1) -> TPoly:
        """F_t = e*^{t sigma} on a basis word."""
        e = conv_exp_key(self.sigma_functional(), (w,))
        return e.flip_sign() if time_sign < 0 else e

    def st_word(self, w) -> Tensor:
        """S_t = S * e*^{-t sigma} on a basis word, formal in t."""
        cached = self._st.get(w)
        if cached is not None:
            return cached
        out = Tensor(1)
        for (k0, k1), v in comul_word(self.alg, w).terms.items():
            e = self.ft_key(k1, time_sign=-1)
            if not e:
                continue
            for key, sc in self.alg.antipode_word(k0).terms.items():
                out.add_term(key, sc * v * e)
        self._st[w] = out
        return out

    def st(self, u: Tensor, time_sign: int = 1) -> Tensor:
        """S_t (or S_{-t}) extended linearly."""
        if u.rank != 1:
            raise ValueError("the deformed antipode acts on rank-1 tensors")
        out = Tensor(1)
        for (w,), c in u.terms.items():
            for key, val in self.st_word(w).terms.items():
                if time_sign < 0:
                    val = val.flip_sign()
                out.add_term(key, val * c)
        return out


def mu_t(defm: Deformation, u: Tensor, v: Tensor | None = None,
         time_sign: int = 1) -> Tensor:
    return defm.mu_t(u, v, time_sign)


def sigma(source, L: Functional | None = None) -> Functional:
    """sigma = L . (S (x) id) . comul for an algebra or a presentation."""
    alg = source if isinstance(source, Algebra) else Algebra(source)
    return Deformation(alg, L).sigma_functional()


def deformed_antipode(defm: Deformation, a: Tensor,
                      time_sign: int = 1) -> Tensor:
    return defm.st(a, time_sign)


# ---------------------------------------------------------------------------
# sesquilinear forms


class SesquiForm:
    """Form on pairs (conjugated first argument, plain second argument);
    antilinear in the first slot and linear in the second."""

    __slots__ = ("alg", "name", "_fn", "_memo")

    def __init__(self, alg: Algebra, fn, name: str = "form"):
        self.alg = alg
        self.name = name
        self._fn = fn
        self._memo = {}

    def on_words(self, wa, wb) -> TPoly:
        v = self._memo.get((wa, wb))
        if v is None:
            v = as_tpoly(self._fn(wa, wb))
            self._memo[(wa, wb)] = v
        return v

    def __call__(self, a: Tensor, b: Tensor) -> TPoly:
        if a.rank != 1 or b.rank != 1:
            raise ValueError("sesquilinear forms take two rank-1 tensors")
        tot = T_ZERO
        for (wa,), ca in a.terms.items():
            cac = ca.conj()
            for (wb,), cb in b.terms.items():
                v = self.on_words(wa, wb)
                if v:
                    tot = tot + cac * cb * v
        return tot

    def __repr__(self):
        return f"SesquiForm({self.name})"


def sesquilinearize(K: Functional) -> SesquiForm:
    """K-tilde with K-tilde(a-bar, b) = K(a* (x) b)."""
    if K.arity != 2:
        raise ValueError("sesquilinearize takes an arity-2 functional")
    alg = K.alg

    def fn(wa, wb):
        tot = T_ZERO
        for (iw,), ic in alg.involution_word(wa).terms.items():
            lv = K.on_key((iw, wb))
            if lv:
                tot = tot + ic * lv
        return tot

    return SesquiForm(alg, fn, name=f"{K.name}~")


def conv_sesqui(P: SesquiForm, Q: SesquiForm) -> SesquiForm:
    """Convolution w.r.t. (id (x) flip (x) id) . (conjugated comul (x) comul);
    the conjugated comultiplication conjugates the splitting coefficients."""
    if P.alg is not Q.alg:
        raise ValueError("forms live over different algebras")
    alg = P.alg

    def fn(wa, wb):
        tot = T_ZERO
        for (a0, a1), va in comul_word(alg, wa).terms.items():
            vac = va.conj()
            for (b0, b1), vb in comul_word(alg, wb).terms.items():
                p = P.on_words(a0, b0)
                if not p:
                    continue
                q = Q.on_words(a1, b1)
                if q:
                    tot = tot + vac * vb * p * q
        return tot

    return SesquiForm(alg, fn, name=f"({P.name} (*) {Q.name})")


# ---------------------------------------------------------------------------
# the coboundary


def _as_element(alg: Algebra, x) -> Tensor:
    if isinstance(x, Tensor):
        return x
    return alg.normal_form_word(tuple(x))


def cocycle_defect(L: Functional, a, b, c) -> TPoly:
    """The coboundary (delta (x) L) - L.(mul (x) id) + L.(id (x) mul)
    - (L (x) delta) evaluated at a (x) b (x) c."""
    alg = L.alg
    a = _as_element(alg, a)
    b = _as_element(alg, b)
    c = _as_element(alg, c)
    tot = T_ZERO
    for (wa,), ca in a.terms.items():
        for (wb,), cb in b.terms.items():
            for (wc,), cc in c.terms.items():
                coeff = ca * cb * cc
                term = T_ZERO
                if wa == ():
                    term = term + L.on_key((wb, wc))
                for (mw,), mc in alg.mul_words(wa, wb).terms.items():
                    v = L.on_key((mw, wc))
                    if v:
                        term = term - mc * v
                for (mw,), mc in alg.mul_words(wb, wc).terms.items():
                    v = L.on_key((wa, mw))
                    if v:
                        term = term + mc * v
                if wc == ():
                    term = term - L.on_key((wa, wb))
                if term:
                    tot = tot + coeff * term
    return tot
