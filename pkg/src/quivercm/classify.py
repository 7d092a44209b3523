"""Cohen-Macaulay finiteness classification of loop extensions, the
closed count formula for type A_2, and the orbit-counting cross-check.

The classification table: the loop extension of order k over an algebra
derived equivalent to a hereditary algebra of the given Dynkin type is
CM-finite exactly when
    k = 1;  k = 2 and type in ADE;  k = 3 and type in {A_1..A_4};
    k in {4, 5} and type in {A_1, A_2};  k >= 6 and type = A_1.
Items (ii)/(iii) of the source classification say "derived equivalent to"
while (iv)/(v) say "hereditary of type"; the classifier reads all four
uniformly up to derived equivalence and records that choice in the
report metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .quiver import AlgebraPresentation
from .roots import DynkinDescriptor, detect_dynkin, positive_root_count


def s_count(k: int) -> int:
    """Indecomposable GP count for type A_2: 2 + 2(k-1) * 6/(6-k),
    meaningful for 1 <= k <= 5."""
    if not 1 <= k <= 5:
        raise ValueError("the type A_2 count formula needs 1 <= k <= 5")
    val = 2 + Fraction(2 * (k - 1) * 6, 6 - k)
    assert val.denominator == 1
    return int(val)


# type of the triangular endomorphism algebra Gamma_k = T_{k-1}(Lambda):
# (A_2, k) entries from the tilted-algebra identifications in the source,
# (A_3, 3) and (A_4, 3) via T_2(A_n) = T_n(A_2) tensor commutativity,
# (A_1, k) since T_{k-1}(K) is the path algebra of the A_{k-1} quiver.
def gamma_type(lam: DynkinDescriptor, k: int) -> DynkinDescriptor | None:
    if k == 1:
        return None  # no stable part; only projectives
    if k == 2:
        return lam
    if lam.family == "A" and lam.rank == 1:
        return DynkinDescriptor("A", k - 1)
    table = {
        ("A2", 3): DynkinDescriptor("D", 4),
        ("A2", 4): DynkinDescriptor("E", 6),
        ("A2", 5): DynkinDescriptor("E", 8),
        ("A3", 3): DynkinDescriptor("E", 6),
        ("A4", 3): DynkinDescriptor("E", 8),
    }
    return table.get((str(lam), k))


def orbit_count(gamma: DynkinDescriptor, k: int, n_proj: int) -> int:
    """Total indecomposable GP count 2 |Phi+(Gamma_k type)| / k + n_proj.

    The positive roots are enumerated by reflection closure (an
    independent derivation, not a lookup); raises when k does not divide
    2 |Phi+| (the orbit-freeness assumption would be violated).
    """
    nroots = positive_root_count(gamma)
    if (2 * nroots) % k != 0:
        raise ValueError(
            f"orbit formula inapplicable: 2*|Phi+({gamma})| = {2 * nroots} not divisible by k = {k}"
        )
    return 2 * nroots // k + n_proj


def tubular_boundary(t: DynkinDescriptor, k: int) -> tuple[int, int, int] | None:
    """Tubular type of the derived-tubular boundary cases."""
    table = {
        ("D4", 3): (3, 3, 3),
        ("A3", 4): (2, 4, 4),
        ("A5", 3): (2, 3, 6),
        ("A2", 6): (2, 3, 6),
    }
    return table.get((str(t), k))


def is_cm_finite_type(t: DynkinDescriptor, k: int) -> bool:
    if k == 1:
        return True
    if k == 2:
        return True  # every ADE descriptor
    if k == 3:
        return t.family == "A" and t.rank <= 4
    if k in (4, 5):
        return t.family == "A" and t.rank <= 2
    return t.family == "A" and t.rank == 1


@dataclass
class CMReport:
    input_type: str
    k: int
    verdict: str  # 'CM-finite', 'CM-infinite' or 'unknown'
    expected_count: int | None = None
    count_provenance: str | None = None
    boundary_note: tuple[int, int, int] | None = None
    metadata: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "input": self.input_type,
            "k": self.k,
            "verdict": self.verdict,
            "expected_count": self.expected_count,
            "count_provenance": self.count_provenance,
            "boundary_note": list(self.boundary_note) if self.boundary_note else None,
            "metadata": self.metadata,
        }


def classify(
    t: DynkinDescriptor | AlgebraPresentation | None, k: int, n_proj: int | None = None
) -> CMReport:
    """Decide CM-finiteness; presentations are typed only when hereditary
    of Dynkin shape, otherwise the verdict is 'unknown'."""
    meta = {
        "derived_equivalence_reading": (
            "the classification is applied up to derived equivalence uniformly, "
            "including the rows stated for hereditary algebras only"
        )
    }
    if isinstance(t, AlgebraPresentation):
        detected = detect_dynkin(t)
        if detected is None:
            return CMReport(
                t.name or "presentation",
                k,
                "unknown",
                metadata={
                    **meta,
                    "reason": "presentation is not hereditary of Dynkin shape; "
                    "supply the derived-equivalence type explicitly",
                },
            )
        n_proj = len(t.quiver.vertices)
        t = detected
    if t is None:
        return CMReport("unknown", k, "unknown", metadata=meta)
    n_proj = t.rank if n_proj is None else n_proj
    finite = is_cm_finite_type(t, k)
    boundary = tubular_boundary(t, k)
    if not finite:
        return CMReport(str(t), k, "CM-infinite", boundary_note=boundary, metadata=meta)
    if k == 1:
        return CMReport(str(t), k, "CM-finite", n_proj, "projectives only", None, meta)
    gam = gamma_type(t, k)
    if gam is None:
        return CMReport(str(t), k, "CM-finite", None, "count unavailable", None, meta)
    try:
        count = orbit_count(gam, k, n_proj)
    except ValueError as exc:
        return CMReport(str(t), k, "CM-finite", None, f"count unavailable: {exc}", None, meta)
    provenance = f"orbit formula 2|Phi+({gam})|/{k} + {n_proj} projectives"
    report = CMReport(str(t), k, "CM-finite", count, provenance, None, meta)
    if t.family == "A" and t.rank == 2 and 1 <= k <= 5:
        assert count == s_count(k)  # two independent derivations must agree
        report.metadata["matches_type_a2_formula"] = True
    return report
