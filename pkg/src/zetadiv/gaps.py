"""Gap sets, partitions and weights attached to the (1 - zeta)-torsion classes.

For a class with canonical residues a = (a_1..a_{d-1}) the non-gaps are the values

    E(e, m) = sum_j a_j + n (m - sum_j floor((a_j + e) / n)) + d e,   0 <= e < n, m >= 0

and the gap set is [0, 2g - 1] minus those values.  Sorted gaps b_1 < ... < b_g
give the partition lambda_i = b_{g+1-i} - (g - i) of weight sum (b_i - (i - 1)).
The intersection multiplicity of the class with the theta divisor is reported
as that weight (a formula taken over from the complex-analytic theory, not
recomputed here).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError, InternalInvariantViolation, InvalidResidue, NotCoprime


def genus(n: int, d: int) -> int:
    return (n - 1) * (d - 1) // 2


def _check(n: int, d: int, a=None) -> tuple:
    if n < 2 or d < 2:
        raise InputError("n and d must be at least 2")
    if gcd(n, d) != 1:
        raise NotCoprime(f"NotCoprime: gcd({n}, {d}) = {gcd(n, d)}")
    if a is None:
        return ()
    a = tuple(a)
    if len(a) != d - 1:
        raise InvalidResidue(f"InvalidResidue: expected {d - 1} residues, got {len(a)}")
    for v in a:
        if not isinstance(v, int) or not 0 <= v < n:
            raise InvalidResidue(f"InvalidResidue: {v!r} is not in [0, {n - 1}]")
    return a


def nongap_values(n: int, d: int, a, limit: int) -> list[int]:
    """All E(e, m) below ``limit``, with repetitions (there should be none)."""
    a = _check(n, d, a)
    sa = sum(a)
    out = []
    for e in range(n):
        base = sa - n * sum((aj + e) // n for aj in a) + d * e
        m = 0
        while base + n * m < limit:
            v = base + n * m
            if v >= 0:
                out.append(v)
            m += 1
    return sorted(out)


@dataclass(frozen=True)
class GapProfile:
    n: int
    d: int
    a: tuple
    gaps: tuple
    partition: tuple
    weight: int

    @property
    def genus(self) -> int:
        return genus(self.n, self.d)

    def on_theta(self) -> bool:
        return self.weight > 0

    def to_record(self) -> dict:
        return {
            "a": list(self.a),
            "gaps": list(self.gaps),
            "partition": list(self.partition),
            "weight": self.weight,
        }


def partition_from_gaps(gaps) -> tuple:
    b = sorted(gaps)
    g = len(b)
    return tuple(b[g - i] - (g - i) for i in range(1, g + 1))


def gap_set(n: int, d: int, a) -> GapProfile:
    a = _check(n, d, a)
    g = genus(n, d)
    values = nongap_values(n, d, a, 2 * g)
    S = set(values)
    gaps = tuple(k for k in range(2 * g) if k not in S)
    if len(gaps) != g:
        raise InternalInvariantViolation(f"{len(gaps)} gaps for genus {g} at a = {a}")
    lam = partition_from_gaps(gaps)
    weight = sum(b - i for i, b in enumerate(gaps))
    if weight != sum(lam):
        raise InternalInvariantViolation("partition weight disagrees with the gap sum")
    return GapProfile(n, d, a, gaps, lam, weight)


def rho_series(n: int, d: int, a, precision: int | None = None) -> list[int]:
    """Coefficients of T^0..T^(precision-1) in sum_{e, m} T^E(e, m)."""
    if precision is None:
        precision = 2 * genus(n, d) + 1
    coeffs = [0] * precision
    for v in nongap_values(n, d, a, precision):
        coeffs[v] += 1
    if any(c > 1 for c in coeffs):
        raise InternalInvariantViolation(f"repeated exponent in the series for a = {tuple(a)}")
    return coeffs


def weight_from_series(n: int, d: int, a) -> int:
    """[T^2g] T^2 (1 + T + ...)^2 rho_a - g(g-1)/2, checked against the gap-set weight."""
    g = genus(n, d)
    rho = rho_series(n, d, a, 2 * g + 1)
    # (1 + T + ...)^2 = sum (k + 1) T^k; the T^2 shift moves the target index to 2g - 2
    target = 2 * g - 2
    coeff = sum(rho[i] * (target - i + 1) for i in range(0, target + 1))
    w = coeff - g * (g - 1) // 2
    expected = gap_set(n, d, a).weight
    if w != expected:
        raise InternalInvariantViolation(f"series weight {w} != gap weight {expected} at a = {tuple(a)}")
    return w


def all_classes(n: int, d: int):
    from itertools import product

    _check(n, d)
    return [tuple(a) for a in product(range(n), repeat=d - 1)]


def closed_form_total(n: int, d: int) -> Fraction:
    return Fraction(genus(n, d) * (n + 1) * n ** (d - 1), 12)


def weight_total(n: int, d: int) -> int:
    total = sum(gap_set(n, d, a).weight for a in all_classes(n, d))
    if total != closed_form_total(n, d):
        raise InternalInvariantViolation(f"total weight {total} != {closed_form_total(n, d)}")
    return total


@dataclass(frozen=True)
class Multiplicity:
    a: tuple
    value: int
    on_theta: bool
    source: str = "|lambda|, the weight of the gap partition"


def intersection_multiplicity(n: int, d: int, a) -> Multiplicity:
    prof = gap_set(n, d, a)
    g = prof.genus
    if (prof.weight == 0) != (prof.gaps == tuple(range(g))):
        raise InternalInvariantViolation("zero weight should happen exactly for gaps [0, g-1]")
    return Multiplicity(prof.a, prof.weight, prof.weight > 0)


def gap_set_oracle(curve, a) -> tuple:
    """Gaps k in [0, 2g-1] where h^0(D + k INF) = h^0(D + (k-1) INF), with D = sum a_i (P_i - INF)."""
    from .jac import TorsionClass, rr_space

    n, d, g = curve.n, curve.d, curve.genus
    a = _check(n, d, a)
    D = TorsionClass(n, a).divisor()
    from .curve import INF, Divisor

    dims = {}
    for k in range(-1, 2 * g):
        dims[k] = rr_space(curve, D + Divisor.of((INF, k))).dimension
    return tuple(k for k in range(2 * g) if dims[k] == dims[k - 1])


def semigroup(n: int, d: int, limit: int) -> set[int]:
    """Elements of the numerical semigroup generated by n and d below ``limit``."""
    return {i * n + j * d for i in range(limit // n + 1) for j in range(limit // d + 1) if i * n + j * d < limit}


def frobenius_number(n: int, d: int) -> int:
    return n * d - n - d


def charpoly_multiplicity_check(n: int, d: int) -> dict[int, int]:
    """For each k in [1, n-1] the count #{a : na < d(n-k)} + #{a : na < dk} over a in [1, d-1]; each must be d - 1."""
    _check(n, d)
    counts = {}
    for k in range(1, n):
        c1 = sum(1 for a in range(1, d) if n * a < d * (n - k))
        c2 = sum(1 for a in range(1, d) if n * a < d * k)
        counts[k] = c1 + c2
        if counts[k] != d - 1:
            raise InternalInvariantViolation(f"eigenvalue zeta^{k} has multiplicity {counts[k]}, expected {d - 1}")
    if sum(counts.values()) != 2 * genus(n, d):
        raise InternalInvariantViolation("multiplicities do not add up to 2g")
    return counts


# --- exact arithmetic in Q[T]/Phi_n ------------------------------------------------


def _pdivmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, v in enumerate(b):
            a[k + i] -= c * v
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _pmul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


def cyclotomic(n: int) -> list[Fraction]:
    """Phi_n as a coefficient list (low to high): T^n - 1 divided by Phi_m for proper divisors m."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for m in range(1, n):
        if n % m == 0:
            num, r = _pdivmod(num, cyclotomic(m))
            if r:
                raise InternalInvariantViolation("cyclotomic division left a remainder")
    while num and num[-1] == 0:
        num.pop()
    return num


def _pinv_mod(a: list, m: list) -> list:
    """Inverse of a modulo m over Q by the extended Euclidean algorithm."""
    r0, r1 = list(m), list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1 and any(r1):
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        qs = _pmul(q, s1)
        n = max(len(s0), len(qs))
        s0, s1 = s1, [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
    if len(r0) != 1:
        raise InternalInvariantViolation("element is not invertible modulo the cyclotomic polynomial")
    return [v / r0[0] for v in s0]


def csc_sum_check(n: int) -> Fraction:
    """sum_{i=1}^{n-1} 1 / ((1 - zeta^i)(1 - zeta^-i)) computed in Q[T]/Phi_n; must equal (n^2 - 1)/12."""
    if n < 2:
        raise InputError("n must be at least 2")
    phi = cyclotomic(n)
    total = [Fraction(0)]
    for i in range(1, n):
        u = [Fraction(0)] * (n + 1)
        # (1 - T^i)(1 - T^(n-i)) = 1 - T^i - T^(n-i) + T^n
        u[0] += 1
        u[i] -= 1
        u[n - i] -= 1
        u[n] += 1
        _, u = _pdivmod(u, phi)
        inv = _pinv_mod(u, phi)
        L = max(len(total), len(inv))
        total = [(total[k] if k < len(total) else 0) + (inv[k] if k < len(inv) else 0) for k in range(L)]
    _, total = _pdivmod(total, phi)
    if any(total[1:]):
        raise InternalInvariantViolation(f"sum is not rational: {total}")
    value = total[0] if total else Fraction(0)
    if value != Fraction(n * n - 1, 12):
        raise InternalInvariantViolation(f"sum is {value}, expected {Fraction(n * n - 1, 12)}")
    return value
