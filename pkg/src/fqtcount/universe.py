"""Bulk enumeration oracle: factor every monic polynomial at once.

A monic polynomial of degree d over F_q is identified with an integer
code sum c_i q^i (leading term q^d included), so the q^d polynomials of
degree d map to the index range 0..q^d-1.  For each degree this module
records, per polynomial: its smallest prime factor (as an index into a
global prime list), that prime's exact multiplicity, and the index of
the coprime cofactor.  Membership tests for the counted families are
then single vectorized passes over these arrays, giving an independent
exhaustive check of every generating-function count.

The sieve writes products P^e * h for primes P in canonical order and
e descending; the first write into a slot is therefore the smallest
prime factor at its exact multiplicity, with a cofactor coprime to it.
Products are computed in base-p digit form, where multiplication by a
fixed polynomial is a matrix product that BLAS batches over all
cofactors at once.
"""

from __future__ import annotations

import numpy as np

from . import ffield
from .errors import EvenCharacteristic, ResourceLimit
from .ffield import FieldSpec, MonicPoly

_FAMILIES = ("landau", "s1", "s2", "s3", "arith")


def code_of_poly(field: FieldSpec, f: MonicPoly) -> int:
    return sum(c * field.q**i for i, c in enumerate(f.coeffs))


def poly_of_code(field: FieldSpec, code: int) -> MonicPoly:
    q = field.q
    coeffs = []
    while code:
        code, c = divmod(code, q)
        coeffs.append(c)
    return MonicPoly(tuple(coeffs))


def _digit_count(field: FieldSpec, degree: int) -> int:
    return (degree + 1) * field.k


def _digits_of_codes(field: FieldSpec, codes: np.ndarray, degree: int) -> np.ndarray:
    """Base-p digit matrix (float32 rows) of the given codes."""
    p = field.p
    width = _digit_count(field, degree)
    powers = p ** np.arange(width, dtype=np.int64)
    return ((codes[:, None] // powers[None, :]) % p).astype(np.float32)


def _element_digits(field: FieldSpec, code: int) -> list[int]:
    out = []
    for _ in range(field.k):
        code, r = divmod(code, field.p)
        out.append(r)
    return out


def _mul_matrix(field: FieldSpec, w: tuple[int, ...], in_deg: int, out_deg: int) -> np.ndarray:
    """Digit-space matrix of multiplication by the fixed polynomial w.

    Maps digit vectors of polynomials of degree <= in_deg to digit
    vectors of their products with w (degree <= out_deg).
    """
    k, p = field.k, field.p
    mat = np.zeros((_digit_count(field, in_deg), _digit_count(field, out_deg)),
                   dtype=np.float32)
    for t in range(k):
        unit = p**t
        scaled = tuple(ffield.element_mul(field, c, unit) for c in w)
        for j in range(in_deg + 1):
            col_base = j * k
            row = col_base + t
            for i, c in enumerate(scaled):
                if c:
                    for tt, digit in enumerate(_element_digits(field, c)):
                        if digit:
                            mat[row, (j + i) * k + tt] = digit
    return mat


def _element_mul_matrix(field: FieldSpec, b: int) -> np.ndarray:
    """k x k digit matrix of multiplication by the field element b."""
    k, p = field.k, field.p
    mat = np.zeros((k, k), dtype=np.int32)
    for t in range(k):
        prod = ffield.element_mul(field, p**t, b)
        for tt, digit in enumerate(_element_digits(field, prod)):
            mat[t, tt] = digit
    return mat


class Universe:
    """Smallest-prime-factor tables for all monic polynomials up to a degree."""

    def __init__(self, field: FieldSpec, max_degree: int, cap: int | None = None):
        self.field = field
        self.cap = ffield.default_cap() if cap is None else cap
        self.max_degree = 0
        # per degree d >= 1, arrays of length q^d
        self.spf_gid: list[np.ndarray] = [np.empty(0, np.int32)]
        self.e1: list[np.ndarray] = [np.empty(0, np.int8)]
        self.cof_deg: list[np.ndarray] = [np.empty(0, np.int8)]
        self.cof_idx: list[np.ndarray] = [np.empty(0, np.int64)]
        self.prime_codes = np.empty(0, np.int64)
        self.prime_deg = np.empty(0, np.int16)
        self._prime_slices: list[slice] = [slice(0, 0)]
        self._chi = None
        self._residues: dict[tuple, np.ndarray] = {}
        self._masks: dict[tuple, list[np.ndarray]] = {}
        self.extend_to(max_degree)

    # -- construction -------------------------------------------------

    def extend_to(self, max_degree: int) -> None:
        q = self.field.q
        if q**max_degree > self.cap:
            raise ResourceLimit(
                f"universe of degree {max_degree} over F_{q} exceeds cap {self.cap}"
            )
        for d in range(self.max_degree + 1, max_degree + 1):
            self._build_degree(d)
        self.max_degree = max(self.max_degree, max_degree)

    def _build_degree(self, d: int) -> None:
        field, q = self.field, self.field.q
        size = q**d
        spf = np.full(size, -1, dtype=np.int32)
        e1 = np.zeros(size, dtype=np.int8)
        cof_deg = np.zeros(size, dtype=np.int8)
        cof_idx = np.zeros(size, dtype=np.int64)
        p_pows = self.field.p ** np.arange(_digit_count(field, d), dtype=np.int64)
        digit_cache: dict[int, np.ndarray] = {}
        for p_deg in range(1, d // 2 + 1):
            sl = self._prime_slices[p_deg]
            for gid in range(sl.start, sl.stop):
                prime = poly_of_code(field, int(self.prime_codes[gid]))
                for e in range(d // p_deg, 0, -1):
                    k_deg = d - e * p_deg
                    self._sieve_batch(
                        spf, e1, cof_deg, cof_idx, gid, prime, e, k_deg,
                        d, p_pows, digit_cache,
                    )
        prime_idx = np.flatnonzero(spf < 0)
        start = len(self.prime_codes)
        gids = np.arange(start, start + len(prime_idx), dtype=np.int32)
        spf[prime_idx] = gids
        e1[prime_idx] = 1
        cof_deg[prime_idx] = 0
        cof_idx[prime_idx] = 0
        self.prime_codes = np.concatenate(
            [self.prime_codes, prime_idx.astype(np.int64) + q**d]
        )
        self.prime_deg = np.concatenate(
            [self.prime_deg, np.full(len(prime_idx), d, dtype=np.int16)]
        )
        self._prime_slices.append(slice(start, start + len(prime_idx)))
        self.spf_gid.append(spf)
        self.e1.append(e1)
        self.cof_deg.append(cof_deg)
        self.cof_idx.append(cof_idx)
        self._chi = None  # refresh lazily over the longer prime list
        self._residues.clear()

    def _sieve_batch(self, spf, e1, cof_deg, cof_idx, gid, prime, e, k_deg,
                     d, p_pows, digit_cache) -> None:
        field, q = self.field, self.field.q
        w = prime.coeffs
        for _ in range(e - 1):
            w = ffield.poly_mul(field, w, prime.coeffs)
        mat = _mul_matrix(field, w, k_deg, d)
        digits = digit_cache.get(k_deg)
        if digits is None:
            codes_h = q**k_deg + np.arange(q**k_deg, dtype=np.int64)
            digits = _digits_of_codes(field, codes_h, k_deg)
            digit_cache[k_deg] = digits
        prod_digits = np.mod(digits @ mat, float(field.p))
        codes_f = prod_digits.astype(np.int64) @ p_pows[: prod_digits.shape[1]]
        idx = codes_f - q**d
        sel = np.flatnonzero(spf[idx] < 0)
        if len(sel):
            tgt = idx[sel]
            spf[tgt] = gid
            e1[tgt] = e
            cof_deg[tgt] = k_deg
            cof_idx[tgt] = sel

    # -- per-prime attributes -----------------------------------------

    def prime_chi2(self) -> np.ndarray:
        """Quadratic character of each prime, in {-1, 0, +1}."""
        if self._chi is None or len(self._chi) != len(self.prime_codes):
            t = ffield.tables(self.field)
            c0 = (self.prime_codes % self.field.q).astype(np.int64)
            chi = np.where(t.is_square[c0], 1, -1).astype(np.int8)
            chi[c0 == 0] = 0
            self._chi = chi
        return self._chi

    def prime_residues(self, m: MonicPoly) -> np.ndarray:
        """Residue code of each prime modulo m, vectorized per degree."""
        key = m.coeffs
        cached = self._residues.get(key)
        if cached is not None and len(cached) == len(self.prime_codes):
            return cached
        field, p, k = self.field, self.field.p, self.field.k
        dm = m.degree
        mul_mats = [_element_mul_matrix(field, c) for c in m.coeffs]
        out = np.empty(len(self.prime_codes), dtype=np.int64)
        res_pows = p ** np.arange(dm * k, dtype=np.int64)
        for d in range(1, self.max_degree + 1):
            sl = self._prime_slices[d]
            if sl.start == sl.stop:
                continue
            codes = self.prime_codes[sl]
            if d < dm:
                out[sl] = codes
                continue
            digits = (
                (codes[:, None] // p ** np.arange(_digit_count(field, d), dtype=np.int64))
                % p
            ).astype(np.int32)
            for i in range(d, dm - 1, -1):
                lead = digits[:, i * k : (i + 1) * k]
                if not lead.any():
                    continue
                base = i - dm
                for j in range(dm + 1):
                    col = (base + j) * k
                    digits[:, col : col + k] = np.mod(
                        digits[:, col : col + k] - lead @ mul_mats[j], p
                    )
            out[sl] = digits[:, : dm * k].astype(np.int64) @ res_pows
        self._residues[key] = out
        return out

    # -- membership masks ---------------------------------------------

    def masks(self, kind: str, m: MonicPoly | None = None, a_code: int | None = None) -> list[np.ndarray]:
        """Per-degree boolean membership arrays for one family.

        Index d of the returned list covers the monic polynomials of
        degree d in canonical order; index 0 is the constant 1.
        """
        if kind not in _FAMILIES:
            raise ValueError(f"unknown family kind {kind!r}")
        key = (kind, None if m is None else m.coeffs, a_code)
        cached = self._masks.get(key)
        if cached is not None and len(cached) == self.max_degree + 1:
            return cached
        if kind == "landau":
            if self.field.p == 2:
                raise EvenCharacteristic("quadratic character needs odd q")
            chi = self.prime_chi2()
            good_prime = chi >= 0
        elif kind in ("s1", "s2", "s3"):
            good_prime = (np.asarray(self.prime_deg) % 2 == 0)
        else:
            if m is None or a_code is None:
                raise ValueError("arith masks need a modulus and a residue code")
            good_prime = self.prime_residues(m) == a_code
        ok = [np.ones(1, dtype=bool)]
        for d in range(1, self.max_degree + 1):
            spf = self.spf_gid[d]
            e1 = self.e1[d]
            good = good_prime[spf]
            if kind in ("landau", "s1"):
                pred = good | (e1 % 2 == 0)
            elif kind == "s3":
                pred = good & (e1 == 1)
            else:
                pred = good
            okc = np.empty(len(spf), dtype=bool)
            cdeg = self.cof_deg[d]
            cidx = self.cof_idx[d]
            for kk in np.unique(cdeg):
                sel = cdeg == kk
                okc[sel] = ok[kk][cidx[sel]]
            ok.append(pred & okc)
        self._masks[key] = ok
        return ok

    def count(self, kind: str, degree: int, m: MonicPoly | None = None,
              a_code: int | None = None) -> int:
        """Exhaustive count of degree-n family members."""
        if degree > self.max_degree:
            self.extend_to(degree)
        if degree == 0:
            return 1
        return int(self.masks(kind, m, a_code)[degree].sum())

    # -- diagnostics ---------------------------------------------------

    def primes_of_degree(self, d: int) -> np.ndarray:
        return self.prime_codes[self._prime_slices[d]]

    def factor_chain(self, degree: int, idx: int) -> list[tuple[int, int]]:
        """Factorization of one polynomial as (prime code, multiplicity) pairs."""
        out = []
        d, i = degree, idx
        while d > 0:
            gid = int(self.spf_gid[d][i])
            out.append((int(self.prime_codes[gid]), int(self.e1[d][i])))
            d, i = int(self.cof_deg[d][i]), int(self.cof_idx[d][i])
        return out


_UNIVERSE_CACHE: dict[tuple, Universe] = {}


def get_universe(field: FieldSpec, max_degree: int, cap: int | None = None) -> Universe:
    """A shared Universe for the field, grown on demand.

    An explicit cap limits how much work this call may trigger; it is
    not stored, so one small-budget caller never shrinks the shared
    instance for everyone else.  Data that is already built is returned
    regardless of cap, since no new work is involved.
    """
    key = (field.p, field.k, field.modulus)
    uni = _UNIVERSE_CACHE.get(key)
    if uni is not None and max_degree <= uni.max_degree:
        return uni
    if cap is not None and field.q**max_degree > cap:
        raise ResourceLimit(
            f"universe of degree {max_degree} over F_{field.q} exceeds cap {cap}"
        )
    if uni is None:
        uni = Universe(field, max_degree)
        _UNIVERSE_CACHE[key] = uni
    else:
        uni.extend_to(max_degree)
    return uni
