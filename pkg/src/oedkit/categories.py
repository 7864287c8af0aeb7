"""Category-learning case study: exemplar vs prototype classifiers.

Stimuli are 4-bit objects (four binary dimensions). A training structure
assigns 5 objects to category A and 4 to category B subject to three
constraints: linear separability, the 5/4 split, and A-typical value 1 /
B-typical value 0 on every dimension. Up to simultaneous permutation of
the four dimensions there are exactly 933 such structures; the classic
hand-designed Medin-Schaffer 5-4 assignment ships as a bundled data file.

Both models score a probe by multiplicative similarity (product of the
per-dimension mismatch parameters over mismatched dimensions) and choose
label A with probability evidence_A / (evidence_A + evidence_B). The
exemplar model's evidence sums similarity to every stored training
exemplar of a category; the prototype model compares against the two
modal objects 1111 and 0000. With point parameters the 16 per-object
labels are conditionally independent, which the EIG fast path exploits.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .distributions import FiniteDistribution
from .models import GroupExperiment, Model

__all__ = [
    "DegenerateEvidenceError",
    "InvalidBundledStructureError",
    "ALL_OBJECTS",
    "NUM_DIMENSIONS",
    "SimilarityParams",
    "DEFAULT_SIMILARITY",
    "PARAM_GRID_VALUES",
    "similarity",
    "CategoryStructure",
    "is_linearly_separable",
    "enumerate_structures",
    "ms54_structure",
    "exemplar_probs",
    "prototype_probs",
    "exemplar_model",
    "prototype_model",
    "exemplar_model_marginalized",
    "prototype_model_marginalized",
    "marginalized_vector_probs",
    "structures_to_jsonl",
]

NUM_DIMENSIONS = 4

#: all 16 objects as 4-character bit strings, in numeric order
ALL_OBJECTS: tuple[str, ...] = tuple(format(i, "04b") for i in range(16))

_OBJECT_BIT: dict[str, int] = {obj: 1 << i for i, obj in enumerate(ALL_OBJECTS)}

_PROTO_A = "1111"
_PROTO_B = "0000"

#: per-dimension grid for the parameter-marginalized mode
PARAM_GRID_VALUES: tuple[float, ...] = (0.1, 0.3, 0.5, 0.7, 0.9)


class DegenerateEvidenceError(ValueError):
    """Total similarity evidence vanished (requires a zero parameter)."""


class InvalidBundledStructureError(ValueError):
    """The bundled training-structure file failed validation."""


def _check_object(obj: str) -> str:
    if obj not in _OBJECT_BIT:
        raise ValueError(f"need a 4-character bit string, got {obj!r}")
    return obj


def complement_object(obj: str) -> str:
    """Flip every bit."""
    _check_object(obj)
    return "".join("1" if c == "0" else "0" for c in obj)


def permute_object(obj: str, perm: Sequence[int]) -> str:
    """Reorder the dimensions of one object."""
    return "".join(obj[i] for i in perm)


@dataclass(frozen=True)
class SimilarityParams:
    """Per-dimension mismatch similarities, each in (0, 1].

    A value of 1 makes the dimension invisible; values near 0 make any
    mismatch on it catastrophic for similarity.
    """

    s: tuple[float, float, float, float] = (0.3, 0.3, 0.3, 0.3)

    def __post_init__(self) -> None:
        if len(self.s) != NUM_DIMENSIONS:
            raise ValueError(f"need {NUM_DIMENSIONS} parameters, got {len(self.s)}")
        for v in self.s:
            if not 0.0 < v <= 1.0:
                raise ValueError(f"mismatch similarity must be in (0, 1], got {v}")


DEFAULT_SIMILARITY = SimilarityParams()


def similarity(a: str, b: str, params: SimilarityParams = DEFAULT_SIMILARITY) -> float:
    """Multiplicative similarity: product of s_d over mismatched dimensions."""
    _check_object(a)
    _check_object(b)
    out = 1.0
    for ca, cb, s in zip(a, b, params.s):
        if ca != cb:
            out *= s
    return out


# ---------------------------------------------------------------------------
# linear separability


def _objects_to_mask(objs: Iterable[str]) -> int:
    mask = 0
    for o in objs:
        mask |= _OBJECT_BIT[_check_object(o)]
    return mask


@lru_cache(maxsize=None)
def _threshold_masks(weight_bound: int = 16) -> np.ndarray:
    """All dichotomies of the 16 objects realizable by a linear threshold.

    Sweeps every integer weight vector with components in
    [-weight_bound, weight_bound] and every threshold between consecutive
    distinct dot-product values; a bound of 16 is ample for 4 Boolean
    dimensions (the set already saturates at 1882 functions far below it).
    Returns the masks as a sorted int64 array; bit i is object i.
    """
    X = np.array([[int(c) for c in obj] for obj in ALL_OBJECTS], dtype=np.int32)
    rng = np.arange(-weight_bound, weight_bound + 1, dtype=np.int32)
    grids = np.meshgrid(rng, rng, rng, rng, indexing="ij")
    weights = np.stack([g.ravel() for g in grids], axis=1)
    bitw = (1 << np.arange(16)).astype(np.int64)

    masks: set[int] = {0}
    chunk = 200_000
    for start in range(0, len(weights), chunk):
        dots = weights[start : start + chunk] @ X.T
        order = np.argsort(-dots, axis=1, kind="stable")
        sorted_dots = np.take_along_axis(dots, order, axis=1)
        cum = np.cumsum(bitw[order], axis=1)
        # a cut is realizable only between strictly decreasing dot values
        valid = np.empty(cum.shape, dtype=bool)
        valid[:, :-1] = sorted_dots[:, :-1] > sorted_dots[:, 1:]
        valid[:, -1] = True
        masks.update(np.unique(cum[valid]).tolist())
    return np.array(sorted(masks), dtype=np.int64)


def is_linearly_separable(
    train_a: Iterable[str], train_b: Iterable[str], method: str = "masks"
) -> bool:
    """True iff a hyperplane puts all of train_a strictly above all of train_b.

    ``method="masks"`` decides against the precomputed threshold-function
    table; ``method="lp"`` solves the margin-1 feasibility system
    w.a >= b+1, w.x <= b-1 with a linear program. Both are exact for this
    integral 4-bit domain and must agree.
    """
    a = list(train_a)
    b = list(train_b)
    if not a or not b:
        raise ValueError("both training sets must be nonempty")
    am = _objects_to_mask(a)
    bm = _objects_to_mask(b)
    if am & bm:
        raise ValueError("training sets must be disjoint")
    if method == "masks":
        masks = _threshold_masks()
        return bool(np.any(((masks & am) == am) & ((masks & bm) == 0)))
    if method == "lp":
        from scipy.optimize import linprog

        a_ub = []
        b_ub = []
        for obj in a:
            a_ub.append([-float(c == "1") for c in obj] + [1.0])
            b_ub.append(-1.0)
        for obj in b:
            a_ub.append([float(c == "1") for c in obj] + [-1.0])
            b_ub.append(-1.0)
        res = linprog(
            c=[0.0] * 5, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * 5, method="highs"
        )
        if res.status == 0:
            return True
        if res.status == 2:
            return False
        raise RuntimeError(f"linprog failed: status {res.status} ({res.message})")
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# training structures


@dataclass(frozen=True)
class CategoryStructure:
    """A valid 5-vs-4 training assignment; validated on construction.

    Dimension-wise, category A must favor 1 by strict majority (5 members,
    so no ties are possible) and category B must favor 0 at least weakly:
    with 4 members a 2-2 tie still leaves 0000 among B's modal objects,
    and the classic Medin-Schaffer assignment contains exactly such a tie.
    """

    train_a: tuple[str, ...]
    train_b: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "train_a", tuple(sorted(self.train_a)))
        object.__setattr__(self, "train_b", tuple(sorted(self.train_b)))
        for obj in self.train_a + self.train_b:
            _check_object(obj)
        if len(set(self.train_a)) != 5 or len(set(self.train_b)) != 4:
            raise ValueError(
                f"need 5 distinct A and 4 distinct B objects, got "
                f"{len(set(self.train_a))} and {len(set(self.train_b))}"
            )
        if set(self.train_a) & set(self.train_b):
            raise ValueError("training sets overlap")
        for d in range(NUM_DIMENSIONS):
            ones_a = sum(obj[d] == "1" for obj in self.train_a)
            if ones_a < 3:
                raise ValueError(f"dimension {d}: A must favor 1 by strict majority")
            ones_b = sum(obj[d] == "1" for obj in self.train_b)
            if ones_b > 2:
                raise ValueError(f"dimension {d}: B must favor 0 at least weakly")
        if not is_linearly_separable(self.train_a, self.train_b):
            raise ValueError("training sets are not linearly separable")

    def canonical_key(self) -> str:
        return "+".join(self.train_a) + "|" + "+".join(self.train_b)

    def permuted(self, perm: Sequence[int]) -> "CategoryStructure":
        return CategoryStructure(
            tuple(permute_object(o, perm) for o in self.train_a),
            tuple(permute_object(o, perm) for o in self.train_b),
        )

    def canonical_form(self) -> "CategoryStructure":
        """Lexicographically minimal member of the dimension-permutation class."""
        best = min(
            (
                (
                    tuple(sorted(permute_object(o, p) for o in self.train_a)),
                    tuple(sorted(permute_object(o, p) for o in self.train_b)),
                )
                for p in itertools.permutations(range(NUM_DIMENSIONS))
            )
        )
        return CategoryStructure(best[0], best[1])

    def to_json_dict(self) -> dict[str, list[str]]:
        return {"trainA": list(self.train_a), "trainB": list(self.train_b)}


@lru_cache(maxsize=1)
def enumerate_structures() -> tuple[CategoryStructure, ...]:
    """All valid training structures, one canonical member per class.

    Filters the 5-of-16 / 4-of-11 assignments by the modal constraints,
    keeps the linearly separable ones, and deduplicates up to the 24
    dimension permutations. Output is sorted by canonical key and contains
    933 structures.
    """
    masks = _threshold_masks()
    perms = list(itertools.permutations(range(NUM_DIMENSIONS)))
    perm_maps = [{o: permute_object(o, p) for o in ALL_OBJECTS} for p in perms]

    a_sets = [
        combo
        for combo in itertools.combinations(ALL_OBJECTS, 5)
        if all(sum(o[d] == "1" for o in combo) >= 3 for d in range(NUM_DIMENSIONS))
    ]
    canonical: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
    for train_a in a_sets:
        a_mask = _objects_to_mask(train_a)
        rest = [o for o in ALL_OBJECTS if o not in train_a]
        for train_b in itertools.combinations(rest, 4):
            if any(sum(o[d] == "1" for o in train_b) > 2 for d in range(NUM_DIMENSIONS)):
                continue
            b_mask = _objects_to_mask(train_b)
            if not np.any(((masks & a_mask) == a_mask) & ((masks & b_mask) == 0)):
                continue
            canonical.add(
                min(
                    (
                        tuple(sorted(pm[o] for o in train_a)),
                        tuple(sorted(pm[o] for o in train_b)),
                    )
                    for pm in perm_maps
                )
            )
    return tuple(CategoryStructure(a, b) for a, b in sorted(canonical))


def ms54_structure() -> CategoryStructure:
    """Load and validate the bundled Medin-Schaffer 5-4 training assignment.

    The file is a transcription from the 1978 publication (see the data
    file and README for provenance); it is validated against every
    structure invariant rather than trusted.
    """
    try:
        raw = resources.files("oedkit").joinpath("data/ms54.json").read_text()
        payload = json.loads(raw)
        return CategoryStructure(tuple(payload["trainA"]), tuple(payload["trainB"]))
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise InvalidBundledStructureError(f"bundled 5-4 structure is invalid: {exc}") from exc


def structures_to_jsonl(structures: Iterable[CategoryStructure]) -> str:
    """One canonical JSON object per line, stable across runs."""
    return "".join(
        json.dumps(s.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n"
        for s in structures
    )


# ---------------------------------------------------------------------------
# classifier models


def exemplar_probs(
    structure: CategoryStructure, params: SimilarityParams = DEFAULT_SIMILARITY
) -> tuple[float, ...]:
    """P(label A) for each of the 16 probe objects under the exemplar model."""
    out = []
    for obj in ALL_OBJECTS:
        ev_a = sum(similarity(obj, e, params) for e in structure.train_a)
        ev_b = sum(similarity(obj, e, params) for e in structure.train_b)
        if ev_a + ev_b == 0.0:
            raise DegenerateEvidenceError(f"no evidence for probe {obj!r}")
        out.append(ev_a / (ev_a + ev_b))
    return tuple(out)


def prototype_probs(params: SimilarityParams = DEFAULT_SIMILARITY) -> tuple[float, ...]:
    """P(label A) per probe under the prototype model (prototypes 1111/0000)."""
    out = []
    for obj in ALL_OBJECTS:
        ev_a = similarity(obj, _PROTO_A, params)
        ev_b = similarity(obj, _PROTO_B, params)
        out.append(ev_a / (ev_a + ev_b))
    return tuple(out)


def _resolve_structure(x: object, structure: CategoryStructure) -> None:
    inner = x.inner if isinstance(x, GroupExperiment) else x
    if inner != structure:
        raise ValueError("model was built for a different training structure")


def _point_model(name: str, structure: CategoryStructure, probs: tuple[float, ...]) -> Model:
    def item_probs(x: object) -> tuple[float, ...]:
        _resolve_structure(x, structure)
        return probs

    def predict(x: object) -> FiniteDistribution:
        _resolve_structure(x, structure)
        pairs = []
        for labels in itertools.product((0, 1), repeat=len(probs)):
            prob = 1.0
            for y, p in zip(labels, probs):
                prob *= p if y else (1.0 - p)
            pairs.append((labels, prob))
        return FiniteDistribution.from_probs(pairs)

    def score(x: object, labels: Sequence[int]) -> float:
        _resolve_structure(x, structure)
        if len(labels) != len(probs):
            raise ValueError(f"expected {len(probs)} labels, got {len(labels)}")
        prob = 1.0
        for y, p in zip(labels, probs):
            prob *= p if y else (1.0 - p)
        return prob

    return Model(name=name, predict=predict, score=score, item_probs=item_probs)


def exemplar_model(
    structure: CategoryStructure, params: SimilarityParams = DEFAULT_SIMILARITY
) -> Model:
    """Single-participant exemplar classifier for one training structure.

    The response is the 16-tuple of 0/1 labels (1 = A) over ALL_OBJECTS,
    with per-object labels conditionally independent given the point
    parameters. Lift with groupify_vector for multi-participant counts.
    """
    return _point_model("exemplar", structure, exemplar_probs(structure, params))


def prototype_model(
    structure: CategoryStructure, params: SimilarityParams = DEFAULT_SIMILARITY
) -> Model:
    """Single-participant prototype classifier (same response contract)."""
    return _point_model("prototype", structure, prototype_probs(params))


def _param_grid() -> list[SimilarityParams]:
    return [
        SimilarityParams(s) for s in itertools.product(PARAM_GRID_VALUES, repeat=NUM_DIMENSIONS)
    ]


def _mixture_vector_probs(probs_per_gridpoint: list[tuple[float, ...]]) -> np.ndarray:
    """Even mixture of product-Bernoulli distributions over all label vectors.

    Returns probabilities indexed by itertools.product((0, 1), repeat=K)
    order. Size 2**K; K = 16 here, so 65536 entries.
    """
    grid_probs = np.array(probs_per_gridpoint)
    log_p = np.log(grid_probs)
    log_q = np.log1p(-grid_probs)
    k = grid_probs.shape[1]
    y_all = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.float64)
    probs = np.zeros(len(y_all))
    for start in range(0, grid_probs.shape[0], 125):
        lp = log_p[start : start + 125]
        lq = log_q[start : start + 125]
        probs += np.exp(y_all @ lp.T + (1.0 - y_all) @ lq.T).sum(axis=1)
    return probs / len(grid_probs)


def marginalized_vector_probs(structure: CategoryStructure, kind: str) -> np.ndarray:
    """Response-vector distribution of a marginalized classifier.

    ``kind`` is "exemplar" or "prototype"; ordering follows
    itertools.product((0, 1), repeat=16). The prototype distribution does
    not depend on the structure and is cached.
    """
    if kind == "exemplar":
        return _mixture_vector_probs([exemplar_probs(structure, g) for g in _param_grid()])
    if kind == "prototype":
        return _prototype_marginalized_vector().copy()
    raise ValueError(f"unknown classifier kind {kind!r}")


@lru_cache(maxsize=1)
def _prototype_marginalized_vector() -> np.ndarray:
    return _mixture_vector_probs([prototype_probs(g) for g in _param_grid()])


def _marginalized_model(
    name: str, structure: CategoryStructure, probs_per_gridpoint: list[tuple[float, ...]]
) -> Model:
    grid_probs = np.array(probs_per_gridpoint)  # (G, 16)
    log_p = np.log(grid_probs)
    log_q = np.log1p(-grid_probs)
    weight = 1.0 / len(grid_probs)

    def score(x: object, labels: Sequence[int]) -> float:
        _resolve_structure(x, structure)
        y = np.asarray(labels, dtype=np.float64)
        if y.shape != (grid_probs.shape[1],):
            raise ValueError(f"expected {grid_probs.shape[1]} labels")
        log_lik = log_p @ y + log_q @ (1.0 - y)
        return float(weight * np.exp(log_lik).sum())

    def predict(x: object) -> FiniteDistribution:
        _resolve_structure(x, structure)
        probs = _mixture_vector_probs(probs_per_gridpoint)
        labels = itertools.product((0, 1), repeat=grid_probs.shape[1])
        return FiniteDistribution.from_probs(zip(labels, probs.tolist()))

    # item_probs stays None: the grid mixture couples the per-item labels
    return Model(name=name, predict=predict, score=score)


def exemplar_model_marginalized(structure: CategoryStructure) -> Model:
    """Exemplar classifier with the similarity parameters marginalized out.

    Each dimension's mismatch parameter gets an independent uniform prior
    over PARAM_GRID_VALUES; the response-vector distribution is the even
    mixture over the 625 grid points. Per-object labels are no longer
    independent, so only direct enumeration can score it.
    """
    return _marginalized_model(
        "exemplar", structure, [exemplar_probs(structure, g) for g in _param_grid()]
    )


def prototype_model_marginalized(structure: CategoryStructure) -> Model:
    """Prototype classifier with marginalized similarity parameters."""
    return _marginalized_model(
        "prototype", structure, [prototype_probs(g) for g in _param_grid()]
    )
