"""Algebra, coalgebra and Hopf structures on a based space.

Structures carry their coefficient tables (mult, unit, comult, counit,
antipode); checkers verify every axiom exhaustively and report witnesses.
The antipode is never trusted as input: it can be derived as the convolution
inverse of the identity, and derived/declared tables are compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .fields import Field
from .linalg import (BasedSpace, LinMap, Subspace, Vec, invert, kernel, permute_map,
                     rank, scalar_space, solve_many, space, tensor_map, tensor_space,
                     vec_scale)
from .reports import VerificationReport, check_condition, check_maps_equal


class NotInvertible(ValueError):
    """No convolution inverse (or no antipode) exists."""


@dataclass
class AlgebraStructure:
    carrier: BasedSpace
    mult: LinMap          # A x A -> A
    unit: Vec             # the element 1_A

    @cached_property
    def unit_map(self) -> LinMap:
        return LinMap(scalar_space(self.carrier.field), self.carrier,
                      {(i, 0): v for i, v in self.unit.items()})

    def multiply(self, u: Vec, v: Vec) -> Vec:
        """Product of two sparse vectors via the structure constants."""
        f = self.carrier.field
        n = self.carrier.dim
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for t, c in self.mult.column(i * n + j).items():
                    y = f.add(out.get(t, f.zero), f.mul(f.mul(a, b), c))
                    if f.is_zero(y):
                        out.pop(t, None)
                    else:
                        out[t] = y
        return out

    def is_commutative(self) -> bool:
        tw = permute_map([self.carrier, self.carrier], (1, 0))
        return self.mult == self.mult @ tw


def algebra_from_rule(carrier: BasedSpace, mult_rule, unit: dict) -> AlgebraStructure:
    """mult_rule(label1, label2) -> {target atom-or-label: scalar}."""
    prod = tensor_space(carrier, carrier)
    n = carrier.dim

    def col(j):
        a, b = divmod(j, n)
        return carrier.vector(mult_rule(carrier.labels[a], carrier.labels[b]))

    mult = LinMap.from_columns(prod, carrier, col)
    return AlgebraStructure(carrier, mult, carrier.vector(unit))


@dataclass
class CoalgebraStructure:
    carrier: BasedSpace
    comult: LinMap        # C -> C x C
    counit: LinMap        # C -> k

    def counit_of(self, v: Vec):
        f = self.carrier.field
        img = self.counit.apply(v)
        return img.get(0, f.zero)


def coalgebra_from_rule(carrier: BasedSpace, comult_rule, counit_rule) -> CoalgebraStructure:
    """comult_rule(label) -> {(atom, atom) or flat label: scalar}; counit_rule(label) -> scalar."""
    prod = tensor_space(carrier, carrier)
    comult = LinMap.from_label_rule(carrier, prod, comult_rule)
    k = scalar_space(carrier.field)
    counit = LinMap.from_columns(
        carrier, k,
        lambda j: ({0: carrier.field.normalize(counit_rule(carrier.labels[j]))}
                   if not carrier.field.is_zero(carrier.field.normalize(counit_rule(carrier.labels[j])))
                   else {}))
    return CoalgebraStructure(carrier, comult, counit)


def check_algebra(alg: AlgebraStructure, subject: str = "algebra") -> VerificationReport:
    rep = VerificationReport(subject)
    A = alg.carrier
    ident = LinMap.identity(A)
    m, eta = alg.mult, alg.unit_map
    rep.add(check_maps_equal("associativity", m @ tensor_map(m, ident), m @ tensor_map(ident, m)))
    rep.add(check_maps_equal("left_unit", m @ tensor_map(eta, ident), ident))
    rep.add(check_maps_equal("right_unit", m @ tensor_map(ident, eta), ident))
    return rep


def check_coalgebra(coalg: CoalgebraStructure, subject: str = "coalgebra") -> VerificationReport:
    rep = VerificationReport(subject)
    C = coalg.carrier
    ident = LinMap.identity(C)
    d, eps = coalg.comult, coalg.counit
    rep.add(check_maps_equal("coassociativity", tensor_map(d, ident) @ d, tensor_map(ident, d) @ d))
    rep.add(check_maps_equal("left_counit", tensor_map(eps, ident) @ d, ident))
    rep.add(check_maps_equal("right_counit", tensor_map(ident, eps) @ d, ident))
    return rep


def check_bialgebra(alg: AlgebraStructure, coalg: CoalgebraStructure,
                    subject: str = "bialgebra") -> VerificationReport:
    """Compatibility: comult and counit are algebra maps (checked on basis pairs)."""
    if alg.carrier != coalg.carrier:
        raise ValueError("bialgebra parts live on different carriers")
    H = alg.carrier
    rep = VerificationReport(subject)
    rep.extend(check_algebra(alg))
    rep.extend(check_coalgebra(coalg))
    ident = LinMap.identity(H)
    m, eta, d, eps = alg.mult, alg.unit_map, coalg.comult, coalg.counit
    mid_swap = permute_map([H, H, H, H], (0, 2, 1, 3))
    rep.add(check_maps_equal("comult_multiplicative",
                             d @ m, tensor_map(m, m) @ mid_swap @ tensor_map(d, d)))
    rep.add(check_maps_equal("comult_unital", d @ eta, tensor_map(eta, eta)))
    rep.add(check_maps_equal("counit_multiplicative", eps @ m, tensor_map(eps, eps)))
    rep.add(check_maps_equal("counit_unital", eps @ eta,
                             LinMap.identity(scalar_space(H.field))))
    return rep


@dataclass
class HopfStructure:
    algebra: AlgebraStructure
    coalgebra: CoalgebraStructure
    antipode: LinMap
    antipode_inv: LinMap

    @property
    def carrier(self) -> BasedSpace:
        return self.algebra.carrier

    @property
    def field(self) -> Field:
        return self.carrier.field

    @property
    def mult(self) -> LinMap:
        return self.algebra.mult

    @property
    def comult(self) -> LinMap:
        return self.coalgebra.comult

    @property
    def counit(self) -> LinMap:
        return self.coalgebra.counit

    @property
    def unit_map(self) -> LinMap:
        return self.algebra.unit_map

    @property
    def one(self) -> Vec:
        return dict(self.algebra.unit)

    def counit_eta(self) -> LinMap:
        """The convolution unit eta o eps: H -> H."""
        return self.unit_map @ self.counit

    def check(self, subject: str = "hopf") -> VerificationReport:
        rep = check_bialgebra(self.algebra, self.coalgebra, subject)
        H = self.carrier
        ident = LinMap.identity(H)
        m, d = self.mult, self.comult
        target = self.counit_eta()
        rep.add(check_maps_equal("antipode_left", m @ tensor_map(self.antipode, ident) @ d, target))
        rep.add(check_maps_equal("antipode_right", m @ tensor_map(ident, self.antipode) @ d, target))
        rep.add(check_maps_equal("antipode_inverse_right", self.antipode @ self.antipode_inv, ident))
        rep.add(check_maps_equal("antipode_inverse_left", self.antipode_inv @ self.antipode, ident))
        return rep

    def is_commutative(self) -> bool:
        return self.algebra.is_commutative()

    def is_cocommutative(self) -> bool:
        tw = permute_map([self.carrier, self.carrier], (1, 0))
        return self.comult == tw @ self.comult

    def grouplike_inverse(self, sigma: Vec) -> Vec:
        """Solve sigma * x = 1 (grouplikes are invertible in a Hopf algebra)."""
        H = self.carrier
        n = H.dim
        left = LinMap.from_columns(H, H, lambda j: self.algebra.multiply(sigma, {j: H.field.one}))
        from .linalg import solve
        return solve(left, dict(self.one))


# ---------------------------------------------------------------------------
# convolution

def convolution(coalg: CoalgebraStructure, alg: AlgebraStructure,
                f: LinMap, g: LinMap) -> LinMap:
    """f * g = mult o (f x g) o comult in Hom(C, A)."""
    return alg.mult @ tensor_map(f, g) @ coalg.comult


def convolution_unit(coalg: CoalgebraStructure, alg: AlgebraStructure) -> LinMap:
    return alg.unit_map @ coalg.counit


def convolution_inverse(coalg: CoalgebraStructure, alg: AlgebraStructure,
                        f: LinMap) -> LinMap:
    """The two-sided convolution inverse of f, by exact linear solving.

    Solves f * g = unit as a linear system in the coefficients of g, then
    verifies g * f = unit as well (cheap insurance; a one-sided inverse is
    two-sided in a finite-dimensional convolution algebra).
    """
    C, A = coalg.carrier, alg.carrier
    if f.source != C or f.target != A:
        raise ValueError("convolution_inverse: f must map the coalgebra to the algebra")
    fld = C.field
    nC, nA = C.dim, A.dim
    unknowns = space(fld, range(nA * nC), prefix="u")
    equations = space(fld, range(nA * nC), prefix="e")
    entries = {}
    # (f * E_{i,j})(c_k) = sum over comult entries ((a,b),w) with b == j of
    # w * mult(f(c_a) x e_i); accumulate coefficients on equations (t, k).
    for k in range(nC):
        for idx, w in coalg.comult.column(k).items():
            a, j = divmod(idx, nC)
            fa = f.column(a)
            for r, v in fa.items():
                wv = fld.mul(w, v)
                for i in range(nA):
                    for t, mv in alg.mult.column(r * nA + i).items():
                        key = (t * nC + k, i * nC + j)
                        y = fld.add(entries.get(key, fld.zero), fld.mul(wv, mv))
                        if fld.is_zero(y):
                            entries.pop(key, None)
                        else:
                            entries[key] = y
    big = LinMap(unknowns, equations, entries)
    target = convolution_unit(coalg, alg)
    rhs = {}
    for (t, k), v in target.entries.items():
        rhs[t * nC + k] = v
    from .linalg import NoSolution
    try:
        sol = solve_many(big, {0: rhs}, 1)[0]
    except NoSolution:
        raise NotInvertible("no convolution inverse exists") from None
    g = LinMap(C, A, {divmod(idx, nC): v for idx, v in sol.items()})
    if convolution(coalg, alg, g, f) != target:
        raise NotInvertible("one-sided convolution inverse is not two-sided")
    return g


def derive_antipode(alg: AlgebraStructure, coalg: CoalgebraStructure):
    """Antipode pair (S, S inverse) of a bialgebra, as convolution inverses of id.

    S inverse is the antipode of the co-opposite bialgebra.  Raises
    NotInvertible when the bialgebra is not Hopf.
    """
    H = alg.carrier
    ident = LinMap.identity(H)
    S = convolution_inverse(coalg, alg, ident)
    tw = permute_map([H, H], (1, 0))
    cop = CoalgebraStructure(H, tw @ coalg.comult, coalg.counit)
    S_inv = convolution_inverse(cop, alg, ident)
    return S, S_inv


# ---------------------------------------------------------------------------
# twists and duals

def twist(h: HopfStructure, mode: str) -> HopfStructure:
    """Opposite / co-opposite / both; antipode flips to its inverse for op and cop."""
    H = h.carrier
    tw = permute_map([H, H], (1, 0))
    alg, coalg = h.algebra, h.coalgebra
    if mode in ("op", "op_cop"):
        alg = AlgebraStructure(H, h.mult @ tw, dict(h.algebra.unit))
    if mode in ("cop", "op_cop"):
        coalg = CoalgebraStructure(H, tw @ h.comult, h.counit)
    if mode == "op_cop":
        return HopfStructure(alg, coalg, h.antipode, h.antipode_inv)
    if mode in ("op", "cop"):
        return HopfStructure(alg, coalg, h.antipode_inv, h.antipode)
    raise ValueError(f"unknown twist mode {mode!r}")


def dual_space(V: BasedSpace) -> BasedSpace:
    return BasedSpace(V.field, tuple(tuple(a + "*" for a in lab) for lab in V.labels))


def dual_algebra(coalg: CoalgebraStructure) -> AlgebraStructure:
    """Transpose a coalgebra into an algebra on the dual basis."""
    Cd = dual_space(coalg.carrier)
    mult = coalg.comult.transposed_onto(tensor_space(Cd, Cd), Cd)
    unit = {i: v for (zero, i), v in coalg.counit.entries.items()}
    return AlgebraStructure(Cd, mult, unit)


def dual_coalgebra(alg: AlgebraStructure) -> CoalgebraStructure:
    Ad = dual_space(alg.carrier)
    comult = alg.mult.transposed_onto(Ad, tensor_space(Ad, Ad))
    counit = LinMap(Ad, scalar_space(Ad.field),
                    {(0, i): v for i, v in alg.unit.items()})
    return CoalgebraStructure(Ad, comult, counit)


def dual_hopf(h: HopfStructure) -> HopfStructure:
    Hd = dual_space(h.carrier)
    return HopfStructure(dual_algebra(h.coalgebra), dual_coalgebra(h.algebra),
                         h.antipode.transposed_onto(Hd, Hd),
                         h.antipode_inv.transposed_onto(Hd, Hd))


# ---------------------------------------------------------------------------
# characters and grouplikes (exact eigen-splitting; no numerics)

def _char_poly(M, n, fld):
    """Faddeev-LeVerrier characteristic polynomial coefficients [1, c1, ..., cn].

    M given as dense row-major list of lists.  Needs division by integers,
    so this path is used over Q only.
    """
    coeffs = [fld.one]
    A = [row[:] for row in M]
    for k in range(1, n + 1):
        tr = fld.zero
        for i in range(n):
            tr = fld.add(tr, A[i][i])
        ck = fld.mul(fld.neg(fld.inv(fld.of_int(k))), tr)
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            A[i][i] = fld.add(A[i][i], ck)
        B = [[fld.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s = fld.zero
                for t in range(n):
                    s = fld.add(s, fld.mul(M[i][t], A[t][j]))
                B[i][j] = s
        A = B
    return coeffs


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _rational_roots(coeffs, fld):
    """All rational roots of a monic polynomial with Fraction coefficients."""
    from fractions import Fraction
    roots = []
    while len(coeffs) > 1 and coeffs[-1] == 0:
        if 0 not in [r for r in roots]:
            roots.append(Fraction(0))
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return roots
    denlcm = 1
    for c in coeffs:
        denlcm = denlcm * c.denominator // __import__("math").gcd(denlcm, c.denominator)
    ints = [int(c * denlcm) for c in coeffs]
    lead, const = ints[0], ints[-1]
    if const == 0:
        return roots
    cands = set()
    for p in _divisors(const):
        for q in _divisors(lead):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    for cand in sorted(cands):
        val = Fraction(0)
        for c in ints:
            val = val * cand + c
        if val == 0:
            roots.append(cand)
    return roots


def _eigenvalues(R: LinMap):
    """All eigenvalues of a square map that lie in the ground field."""
    fld = R.field
    n = R.source.dim
    if n == 0:
        return []
    if fld.char == 0:
        dense = [[fld.zero] * n for _ in range(n)]
        for (r, c), v in R.entries.items():
            dense[r][c] = v
        coeffs = _char_poly(dense, n, fld)
        return _rational_roots(coeffs, fld)
    out = []
    ident = LinMap.identity(R.source)
    for lam in range(fld.char):
        if rank(R - ident.scale(fld.of_int(lam))) < n:
            out.append(fld.of_int(lam))
    return out


def algebra_characters(alg: AlgebraStructure):
    """All unital algebra maps A -> k, found by exact common-eigenvector splitting.

    A character is a simultaneous eigenvector of the transposed left
    multiplications; candidate eigenvalue vectors are read off recursively
    and each survivor is verified against multiplicativity directly.
    """
    A = alg.carrier
    fld = A.field
    n = A.dim
    if n == 0:
        return []
    ops = []
    for i in range(n):
        ops.append(LinMap(A, A, {(j, t): v
                                 for (t, (ii, j)), v in
                                 (((t, divmod(c, n)), v) for (t, c), v in alg.mult.entries.items())
                                 if ii == i}))
    found = []

    def recurse(i, sub: Subspace, evs):
        if sub.dim == 0:
            return
        if i == n:
            found.append(list(evs))
            return
        R = sub.section @ ops[i] @ sub.include
        for lam in _eigenvalues(R):
            eig = kernel(R - LinMap.identity(sub.carrier).scale(lam))
            vecs = [sub.include.apply(eig.include.column(j)) for j in range(eig.dim)]
            if vecs:
                recurse(i + 1, Subspace.from_basis(A, vecs, name=f"c{i}"),
                        evs + [lam])

    recurse(0, Subspace.from_basis(A, [{i: fld.one} for i in range(n)], name="c"),
            [])

    out = []
    seen = set()
    for evs in found:
        key = tuple(fld.format(x) for x in evs)
        if key in seen:
            continue
        seen.add(key)
        delta = LinMap(A, scalar_space(fld),
                       {(0, i): x for i, x in enumerate(evs) if not fld.is_zero(x)})
        ok = delta.apply(alg.unit).get(0, fld.zero) == fld.one
        for a in range(n):
            if not ok:
                break
            for b in range(n):
                lhs = delta.apply(alg.mult.column(a * n + b)).get(0, fld.zero)
                if lhs != fld.mul(evs[a], evs[b]):
                    ok = False
                    break
        if ok:
            out.append(delta)
    return out


def grouplikes(coalg: CoalgebraStructure):
    """All grouplike elements, as characters of the dual algebra, re-verified."""
    C = coalg.carrier
    fld = C.field
    out = []
    for delta in algebra_characters(dual_algebra(coalg)):
        sigma = {i: v for (zero, i), v in delta.entries.items()}
        tens = {}
        n = C.dim
        for i, a in sigma.items():
            for j, b in sigma.items():
                tens[i * n + j] = fld.mul(a, b)
        ok = coalg.comult.apply(sigma) == tens
        ok = ok and coalg.counit.apply(sigma).get(0, fld.zero) == fld.one
        if ok:
            out.append(sigma)
    return out
