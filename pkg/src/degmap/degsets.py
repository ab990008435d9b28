"""Manifold-level degree queries.

``degree_realizable`` decides whether a single degree k is the degree of
some map between two given manifolds, ``degree_set`` sweeps a symmetric
range of degrees, and the remaining operations answer the classical
questions that reduce to the same congruence: degree-one maps split the
source pairing, highly connected manifolds admit square-degree self-maps,
and a fixed manifold dominates only finitely many candidates.

Which criterion applies depends on the hypotheses:

* n = 2 with a simply connected target: the congruence P.T A P = k B is
  necessary and sufficient, so solver verdicts pass through unchanged;
* n > 2 with both manifolds highly connected and carrying attaching data:
  the congruence must be paired with the homotopy compatibility check, so
  witnesses are iterated until one passes both;
* anything else: only necessity is available.  A solver Yes is then
  downgraded to the distinct kind ``necessary_pass`` so the tool never
  overclaims, while a solver No stays a genuine No.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .catalog import ManifoldModel
from .errors import (
    ConditionNotMet,
    DimensionMismatch,
    NotApplicable,
    WitnessRejected,
)
from .homotopy import (
    check_homotopy_condition,
    elements_from_diagonal,
    pi_model,
    required_multiple,
)
from .intform import (
    IntersectionForm,
    IntMatrix,
    hstack,
    integer_kernel,
    make_form,
    matrix_to_doc,
)
from . import solver
from .solver import DEFAULT_CONFIG, SearchConfig, Verdict

REGIME_CONSTANT = "constant-map"
REGIME_BILINEAR = "bilinear-criterion"
REGIME_HOMOTOPY = "homotopy-criterion"
REGIME_NECESSARY = "necessary-only"

REASON_HOMOTOPY = "HomotopyObstruction"


@dataclass(frozen=True)
class DegreeAnswer:
    """Verdict for one degree, tagged with the regime that produced it."""

    k: int
    kind: str  # yes | no | unknown | necessary_pass
    regime: str
    witness: IntMatrix | None = None
    reason: str | None = None
    radius: int | None = None

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    def describe(self) -> str:
        if self.kind == "yes":
            return "Yes"
        if self.kind == "necessary_pass":
            return "NecessaryConditionsPass"
        if self.kind == "no":
            return f"No ({self.reason})"
        return f"Unknown (radius {self.radius})"

    def short_verdict(self) -> str:
        return {
            "yes": "Yes",
            "no": "No",
            "unknown": "Unknown",
            "necessary_pass": "NecessaryConditionsPass",
        }[self.kind]

    def to_doc(self) -> dict:
        doc = {"k": self.k, "kind": self.kind, "regime": self.regime}
        if self.witness is not None:
            doc["witness"] = matrix_to_doc(self.witness)
        if self.reason is not None:
            doc["reason"] = self.reason
        if self.radius is not None:
            doc["radius"] = self.radius
        return doc


def _regime(source: ManifoldModel, target: ManifoldModel) -> str:
    if source.n != target.n:
        raise DimensionMismatch(
            f"dimensions 2*{source.n} and 2*{target.n} differ"
        )
    if source.n == 2 and target.simply_connected:
        return REGIME_BILINEAR
    if (
        source.n > 2
        and source.highly_connected
        and target.highly_connected
        and source.homotopy_data is not None
        and target.homotopy_data is not None
    ):
        return REGIME_HOMOTOPY
    return REGIME_NECESSARY


def _from_verdict(k: int, regime: str, v: Verdict) -> DegreeAnswer:
    kind = v.kind
    if kind == "yes" and regime == REGIME_NECESSARY:
        kind = "necessary_pass"
    return DegreeAnswer(k, kind, regime, v.witness, v.reason, v.radius)


def degree_realizable(
    source: ManifoldModel,
    target: ManifoldModel,
    k: int,
    cfg: SearchConfig | None = None,
) -> DegreeAnswer:
    """Decide whether some map from source to target has degree k."""
    cfg = cfg or DEFAULT_CONFIG
    regime = _regime(source, target)
    if k == 0:
        # the constant map
        zero = IntMatrix.zeros(source.form.rank, target.form.rank)
        return DegreeAnswer(0, "yes", REGIME_CONSTANT, zero)
    if regime != REGIME_HOMOTOPY:
        verdict = solver.congruence_solve(source.form, target.form, k, cfg)
        return _from_verdict(k, regime, verdict)
    if source.pi != target.pi:
        raise NotApplicable("source and target carry different homotopy models")
    filter_verdict, stream, outcome = solver.open_search(source.form, target.form, k, cfg)
    if filter_verdict is not None:
        return _from_verdict(k, regime, filter_verdict)
    saw_witness = False
    for witness in stream:
        saw_witness = True
        report = check_homotopy_condition(
            source.form, source.homotopy_data,
            target.form, target.homotopy_data,
            witness, k,
        )
        if report.ok:
            solver.verify_witness(source.form, target.form, k, witness)
            return DegreeAnswer(k, "yes", regime, witness)
    if outcome.budget_exhausted:
        return DegreeAnswer(k, "unknown", regime, radius=0)
    if outcome.complete:
        reason = REASON_HOMOTOPY if saw_witness else solver.REASON_EXHAUSTIVE
        return DegreeAnswer(k, "no", regime, reason=reason)
    return DegreeAnswer(k, "unknown", regime, radius=cfg.radius)


# ---------------------------------------------------------------------------
# Degree sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeSetReport:
    """All answers over the symmetric range [-bound, bound].

    Degree 0 always belongs to the set (the constant map) and is recorded
    by the flag rather than an entry.
    """

    source: str
    target: str
    bound: int
    answers: tuple
    always_contains_zero: bool = True

    def _ks(self, kind: str) -> set:
        return {a.k for a in self.answers if a.kind == kind}

    @property
    def yes_set(self) -> set:
        return self._ks("yes")

    @property
    def no_set(self) -> set:
        return self._ks("no")

    @property
    def unknown_set(self) -> set:
        return self._ks("unknown")

    @property
    def necessary_pass_set(self) -> set:
        return self._ks("necessary_pass")

    def answer_for(self, k: int) -> DegreeAnswer:
        for a in self.answers:
            if a.k == k:
                return a
        raise KeyError(k)

    def to_doc(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "bound": self.bound,
            "always_contains_zero": self.always_contains_zero,
            "answers": [a.to_doc() for a in self.answers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2, sort_keys=True)

    def table_lines(self) -> list:
        lines = [f"D({self.source}, {self.target}) over [-{self.bound}, {self.bound}]"]
        lines.append(f"{'k':>4}  {'verdict':<24} detail")
        lines.append(f"{'0':>4}  {'Yes':<24} constant map")
        for a in self.answers:
            detail = ""
            if a.kind in ("yes", "necessary_pass") and a.witness is not None:
                detail = f"P = {_witness_digest(a.witness)}"
            elif a.kind == "no":
                detail = a.reason or ""
            elif a.kind == "unknown":
                detail = f"searched max-norm {a.radius}"
            lines.append(f"{a.k:>4}  {a.short_verdict():<24} {detail}".rstrip())
        return lines


def _witness_digest(p: IntMatrix) -> str:
    if p.rows * p.cols <= 16:
        return str(p.to_rows())
    first = p.to_rows()[0]
    return f"{p.rows}x{p.cols} matrix, first row {first}"


def degree_set(
    source: ManifoldModel,
    target: ManifoldModel,
    bound: int,
    cfg: SearchConfig | None = None,
    workers: int = 1,
) -> DegreeSetReport:
    """degree_realizable for every k in [-bound, bound] except 0.

    Worker parallelism only batches independent k queries; the assembled
    report is ordered by k and identical for any worker count.
    """
    ks = [k for k in range(-bound, bound + 1) if k != 0]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            answers = list(pool.map(lambda k: degree_realizable(source, target, k, cfg), ks))
    else:
        answers = [degree_realizable(source, target, k, cfg) for k in ks]
    answers.sort(key=lambda a: a.k)
    return DegreeSetReport(source.name, target.name, bound, tuple(answers))


# ---------------------------------------------------------------------------
# Degree-one maps and direct summands
# ---------------------------------------------------------------------------


def orthogonal_complement_form(
    ambient: IntersectionForm, witness: IntMatrix, restricted: IntersectionForm
) -> IntersectionForm:
    """C with ambient isomorphic to restricted + C, from a degree-1 witness.

    The witness columns span a sublattice carrying ``restricted``; because
    that block is unimodular the lattice splits off its orthogonal
    complement, whose basis is the integer kernel of witness.T @ ambient.
    """
    pairing = witness.transpose() @ ambient.matrix
    kernel = integer_kernel(pairing)
    comp = IntMatrix.from_columns(kernel, nrows=ambient.rank)
    union = hstack(witness, comp)
    if union.det() not in (1, -1):
        raise WitnessRejected("complement extraction did not produce a basis")
    gram = union.transpose() @ ambient.matrix @ union
    r = restricted.rank
    for i in range(r):
        for j in range(r):
            if gram[i, j] != restricted.matrix[i, j]:
                raise WitnessRejected("upper block does not match the target pairing")
    for i in range(r):
        for j in range(r, ambient.rank):
            if gram[i, j] != 0 or gram[j, i] != 0:
                raise WitnessRejected("complement is not orthogonal")
    sub = IntMatrix.from_rows(
        [[gram[i, j] for j in range(r, ambient.rank)] for i in range(r, ambient.rank)]
    )
    return make_form(sub, ambient.symmetry)


def degree_one_summand(
    source: ManifoldModel,
    target: ManifoldModel,
    cfg: SearchConfig | None = None,
) -> tuple:
    """Decide degree-1 existence; on Yes also return the complement form C.

    Returns (answer, C or None).  C satisfies: source pairing is isomorphic
    to target pairing + C, exhibited by an explicit basis change.
    """
    regime = _regime(source, target)
    if regime == REGIME_NECESSARY:
        raise NotApplicable(
            "degree-one splitting is only decided under the exact criteria"
        )
    answer = degree_realizable(source, target, 1, cfg)
    if not answer.is_yes:
        return answer, None
    comp = orthogonal_complement_form(source.form, answer.witness, target.form)
    return answer, comp


# ---------------------------------------------------------------------------
# Self-maps of square degree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SelfmapReport:
    manifold: str
    k: int
    degree: int
    witness: IntMatrix
    homotopy_checked: bool

    def to_doc(self) -> dict:
        return {
            "manifold": self.manifold,
            "k": self.k,
            "degree": self.degree,
            "witness": matrix_to_doc(self.witness),
            "homotopy_checked": self.homotopy_checked,
        }


def selfmap_square(m: ManifoldModel, k: int) -> SelfmapReport:
    """A verified self-map witness of degree k*k, realized by k times the identity.

    Requires m highly connected and k a multiple of 2T (T even) or T
    (T odd) where T is the torsion order of the homotopy model; for n = 2
    the group is torsion free and every k qualifies.
    """
    if not m.highly_connected:
        raise NotApplicable("square-degree self-maps need a highly connected manifold")
    if m.n == 2:
        model = pi_model(2)
        data = elements_from_diagonal(model, m.form)
    else:
        if m.pi is None or m.homotopy_data is None:
            raise NotApplicable("attaching data is required when n > 2")
        model = m.pi
        data = m.homotopy_data
    rank = m.form.rank
    if k == 0:
        return SelfmapReport(m.name, 0, 0, IntMatrix.zeros(rank, rank), True)
    needed = required_multiple(model)
    if k % needed != 0:
        raise ConditionNotMet(
            f"k = {k} is not a multiple of {needed} required by the torsion order"
        )
    witness = IntMatrix.identity(rank).scaled(k)
    solver.verify_witness(m.form, m.form, k * k, witness)
    report = check_homotopy_condition(m.form, data, m.form, data, witness, k * k)
    if not report.ok:
        raise WitnessRejected(
            f"scaled identity failed the homotopy check at indices {report.failing_indices}"
        )
    return SelfmapReport(m.name, k, k * k, witness, True)


# ---------------------------------------------------------------------------
# Dominance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DominanceReport:
    source: str
    bound: int
    dominated: tuple  # (name, k, witness)
    necessary_only: tuple  # (name, k)
    excluded_by_rank: tuple  # names
    undecided: tuple  # names

    def to_doc(self) -> dict:
        return {
            "source": self.source,
            "bound": self.bound,
            "dominated": [
                {"target": n, "k": k, "witness": matrix_to_doc(w)}
                for n, k, w in self.dominated
            ],
            "necessary_only": [{"target": n, "k": k} for n, k in self.necessary_only],
            "excluded_by_rank": list(self.excluded_by_rank),
            "undecided": list(self.undecided),
        }

    def to_dot(self) -> str:
        lines = ["digraph dominance {"]
        for name, k, _ in self.dominated:
            lines.append(f'  "{self.source}" -> "{name}" [label="deg {k}"];')
        lines.append("}")
        return "\n".join(lines)


def dominated_candidates(
    source: ManifoldModel,
    candidates: Iterable[ManifoldModel],
    bound: int = 4,
    cfg: SearchConfig | None = None,
) -> DominanceReport:
    """Filter candidates by rank, then search degrees 1, -1, 2, -2, ...

    A candidate counts as dominated only on a genuine Yes; targets outside
    the exact criteria can at best reach the necessary_only list.
    """
    dominated = []
    necessary = []
    excluded = []
    undecided = []
    for cand in candidates:
        if cand.form.rank > source.form.rank:
            excluded.append(cand.name)
            continue
        hit = None
        nec = None
        for mag in range(1, bound + 1):
            for k in (mag, -mag):
                ans = degree_realizable(source, cand, k, cfg)
                if ans.kind == "yes":
                    hit = (cand.name, k, ans.witness)
                    break
                if ans.kind == "necessary_pass" and nec is None:
                    nec = (cand.name, k)
            if hit:
                break
        if hit:
            dominated.append(hit)
        elif nec:
            necessary.append(nec)
        else:
            undecided.append(cand.name)
    return DominanceReport(
        source.name,
        bound,
        tuple(dominated),
        tuple(necessary),
        tuple(excluded),
        tuple(undecided),
    )
