"""Static Lie-theoretic data for the simply-laced types A_n, D_n, E6, E7, E8.

Weights are tuples of integers in the fundamental-weight basis; roots are
tuples of integers in the simple-root basis.  The Cartan matrix converts the
latter into the former.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

Weight = tuple[int, ...]
Root = tuple[int, ...]

# Product of the fundamental degrees gives |W| without enumerating W.
_E_DEGREES = {
    6: (2, 5, 6, 8, 9, 12),
    7: (2, 6, 8, 10, 12, 14, 18),
    8: (2, 8, 12, 14, 18, 20, 24, 30),
}

DEFAULT_CACHE_DIR = ".alcove-cache"


class UnsupportedRootSystem(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RootDatum:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    cartan_inverse: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Root, ...]
    highest_root: Root
    rho: Weight
    coxeter_number: int
    weyl_order: int
    cartan_det: int
    index_of_connection: int
    # positive roots rewritten in weight coordinates, same order
    root_weights: tuple[Weight, ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __eq__(self, other):
        if not isinstance(other, RootDatum):
            return NotImplemented
        return (self.family, self.rank) == (other.family, other.rank)

    def __hash__(self):
        return hash((self.family, self.rank))

    def root_to_weight(self, beta: Root) -> Weight:
        return tuple(
            sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def marks(self) -> Root:
        """Coefficients of the highest root on the simple roots."""
        return self.highest_root


def _cartan_from_edges(rank: int, edges) -> tuple[tuple[int, ...], ...]:
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    return tuple(tuple(row) for row in c)


def _dynkin_edges(family: str, rank: int):
    if family == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if family == "E":
        # Bourbaki numbering: 2 hangs off node 4.
        return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, rank)]
    raise UnsupportedRootSystem(family)


def _check_supported(family: str, rank: int) -> None:
    if family == "A" and rank >= 1:
        return
    if family == "D" and rank >= 4:
        return
    if family == "E" and rank in (6, 7, 8):
        return
    raise UnsupportedRootSystem(
        f"unsupported root system {family}{rank}: expected A_n (n>=1), "
        "D_n (n>=4), E6, E7 or E8"
    )


def _inverse(m) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _determinant(m) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def _positive_roots(cartan) -> list[Root]:
    # Simply laced: beta + alpha_i is a root iff <beta, alpha_i> = -1.
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots = list(simple)
    seen = set(roots)
    k = 0
    while k < len(roots):
        beta = roots[k]
        k += 1
        for i in range(rank):
            if sum(cartan[i][j] * beta[j] for j in range(rank)) == -1:
                new = tuple(b + (j == i) for j, b in enumerate(beta))
                if new not in seen:
                    seen.add(new)
                    roots.append(new)
    roots.sort(key=lambda r: (sum(r), r))
    return roots


def _weyl_order(family: str, rank: int) -> int:
    if family == "A":
        degrees = range(2, rank + 2)
    elif family == "D":
        degrees = list(range(2, 2 * rank - 1, 2)) + [rank]
    else:
        degrees = _E_DEGREES[rank]
    return math.prod(degrees)


_INDEX_OF_CONNECTION = {"A": lambda n: n + 1, "D": lambda n: 4,
                        "E": lambda n: {6: 3, 7: 2, 8: 1}[n]}


@lru_cache(maxsize=None)
def build_root_datum(family: str, rank: int) -> RootDatum:
    family = family.upper()
    _check_supported(family, rank)
    cartan = _cartan_from_edges(rank, _dynkin_edges(family, rank))
    roots = _positive_roots(cartan)
    theta = roots[-1]
    det = _determinant(cartan)
    index = _INDEX_OF_CONNECTION[family](rank)
    if det != index:
        raise AssertionError(f"{family}{rank}: det {det} != |P/Q| {index}")
    root_weights = tuple(
        tuple(sum(cartan[i][j] * r[j] for j in range(rank)) for i in range(rank))
        for r in roots
    )
    return RootDatum(
        family=family,
        rank=rank,
        cartan=cartan,
        cartan_inverse=_inverse(cartan),
        positive_roots=tuple(roots),
        highest_root=theta,
        rho=(1,) * rank,
        coxeter_number=2 * len(roots) // rank,
        weyl_order=_weyl_order(family, rank),
        cartan_det=det,
        index_of_connection=index,
        root_weights=root_weights,
    )


def _check_rank(datum: RootDatum, *vectors) -> None:
    for v in vectors:
        if len(v) != datum.rank:
            raise ValueError(
                f"vector {tuple(v)} has length {len(v)}, expected rank {datum.rank}"
            )


def pair(datum: RootDatum, eta: Weight, beta: Root) -> int:
    """<eta, beta> for a weight and a root in simple-root coordinates."""
    _check_rank(datum, eta, beta)
    return sum(e * b for e, b in zip(eta, beta))


def pair_weights(datum: RootDatum, eta: Weight, mu: Weight) -> Fraction:
    """<eta, mu> for two weights, via the inverse Cartan matrix."""
    _check_rank(datum, eta, mu)
    inv = datum.cartan_inverse
    return sum(
        (eta[i] * inv[i][j] * mu[j]
         for i in range(datum.rank) if eta[i]
         for j in range(datum.rank) if mu[j]),
        Fraction(0),
    )


def is_dominant(lam: Weight) -> bool:
    return all(c >= 0 for c in lam)


def _require_dominant(lam: Weight) -> None:
    if not is_dominant(lam):
        raise ValueError(f"weight {tuple(lam)} is not dominant")


def weyl_dim(datum: RootDatum, lam: Weight) -> int:
    _check_rank(datum, lam)
    _require_dominant(lam)
    shifted = tuple(c + 1 for c in lam)
    num = math.prod(pair(datum, shifted, a) for a in datum.positive_roots)
    den = math.prod(sum(a) for a in datum.positive_roots)
    assert num % den == 0
    return num // den


def quantum_dim(datum: RootDatum, lam: Weight, l: int) -> float:
    _check_rank(datum, lam)
    _require_dominant(lam)
    shifted = tuple(c + 1 for c in lam)
    out = 1.0
    for a in datum.positive_roots:
        out *= math.sin(math.pi * pair(datum, shifted, a) / l) / math.sin(
            math.pi * sum(a) / l
        )
    return out


# ---------------------------------------------------------------------------
# Weight multiplicities (Freudenthal) and the on-disk cache


def cache_dir() -> Path | None:
    """Directory of the multiplicity cache; ``None`` when disabled.

    ``ALCOVE_CACHE`` overrides the default; setting it to the empty string
    disables the disk cache.
    """
    value = os.environ.get("ALCOVE_CACHE", DEFAULT_CACHE_DIR)
    return Path(value) if value else None


def cache_path(datum: RootDatum, directory: Path) -> Path:
    return directory / f"{datum.family}{datum.rank}.mults"


def format_record(lam: Weight, mults: dict[Weight, int]) -> str:
    parts = [str(c) for c in lam]
    for mu in sorted(mults):
        parts.extend(str(c) for c in mu)
        parts.append(str(mults[mu]))
    return " ".join(parts)


def parse_record(line: str, rank: int) -> tuple[Weight, dict[Weight, int]]:
    nums = [int(tok) for tok in line.split()]
    step = rank + 1
    if len(nums) < rank or (len(nums) - rank) % step:
        raise ValueError(f"malformed multiplicity record: {line!r}")
    lam = tuple(nums[:rank])
    mults = {}
    for k in range(rank, len(nums), step):
        mults[tuple(nums[k:k + rank])] = nums[k + rank]
    return lam, mults


def read_cache_file(path: Path, rank: int) -> dict[Weight, dict[Weight, int]]:
    records: dict[Weight, dict[Weight, int]] = {}
    if not path.exists():
        return records
    for line in path.read_text(encoding="ascii").splitlines():
        if line.strip():
            lam, mults = parse_record(line, rank)
            records.setdefault(lam, mults)  # write-once: first record wins
    return records


def _append_record(path: Path, line: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    data = (line + "\n").encode("ascii")
    # one O_APPEND write per record so concurrent writers never interleave
    fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_APPEND, 0o644)
    try:
        os.write(fd, data)
    finally:
        os.close(fd)


_memory_cache: dict[tuple[str, int, Path | None], dict[Weight, dict[Weight, int]]] = {}


def _records_for(datum: RootDatum, directory: Path | None):
    key = (datum.family, datum.rank, directory)
    records = _memory_cache.get(key)
    if records is None:
        records = read_cache_file(cache_path(datum, directory), datum.rank) if directory else {}
        _memory_cache[key] = records
    return records


def weight_mults(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    """Dominant weight multiplicities of the irreducible module V(lam).

    Returns ``{mu: m}`` for every dominant ``mu <= lam`` (all of which occur).
    """
    _check_rank(datum, lam)
    _require_dominant(lam)
    lam = tuple(lam)
    directory = cache_dir()
    records = _records_for(datum, directory)
    hit = records.get(lam)
    if hit is not None:
        return dict(hit)
    mults = _freudenthal(datum, lam)
    records[lam] = mults
    if directory is not None:
        _append_record(cache_path(datum, directory), format_record(lam, mults))
    return dict(mults)


def _dominant_below(datum: RootDatum, lam: Weight) -> list[Weight]:
    # Dominant weights below lam are reachable by subtracting positive roots
    # through dominant weights only (Stembridge); the dimension check in the
    # test suite guards this.
    seen = {lam}
    queue = [lam]
    while queue:
        mu = queue.pop()
        for aw in datum.root_weights:
            nu = tuple(m - a for m, a in zip(mu, aw))
            if nu not in seen and all(c >= 0 for c in nu):
                seen.add(nu)
                queue.append(nu)
    rho = datum.rho
    return sorted(seen, key=lambda mu: (-pair_weights(datum, mu, rho), mu))


def _freudenthal(datum: RootDatum, lam: Weight) -> dict[Weight, int]:
    from .weyl import dominant_rep

    rho = datum.rho
    lam_rho = tuple(c + 1 for c in lam)
    top = pair_weights(datum, lam_rho, lam_rho)
    order = _dominant_below(datum, lam)
    mults: dict[Weight, int] = {lam: 1}
    for mu in order[1:]:
        total = 0
        for beta, aw in zip(datum.positive_roots, datum.root_weights):
            k = 1
            while True:
                nu = tuple(m + k * a for m, a in zip(mu, aw))
                m_nu = mults.get(dominant_rep(datum, nu))
                if m_nu is None:
                    break
                total += m_nu * pair(datum, nu, beta)
                k += 1
        mu_rho = tuple(c + r for c, r in zip(mu, rho))
        value = Fraction(2 * total) / (top - pair_weights(datum, mu_rho, mu_rho))
        if value.denominator != 1 or value <= 0:
            raise ArithmeticError(f"Freudenthal produced {value} at {mu} in V{lam}")
        mults[mu] = int(value)
    return mults
