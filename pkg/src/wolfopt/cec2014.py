"""CEC-2014-style benchmark suite: kernels, transforms, hybrids, compositions.

The suite has 30 functions built from 14 base kernels: F1-F3 unimodal,
F4-F16 simple multimodal, F17-F22 hybrid (dimensions split across
kernels), F23-F30 composition (members blended by distance-based
weights).  Function ``i`` adds a bias of ``100 * i`` and anchors its
optimum there.  Transform data (shifts, rotations, permutations) either
comes from a portable text file or from the deterministic generator in
:func:`generate_suite`.
"""

from __future__ import annotations

import dataclasses
import math
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .core import Bounds, Problem

SEARCH_LOWER = -100.0
SEARCH_UPPER = 100.0
SHIFT_RANGE = 80.0
STANDARD_DIMS = (10, 30, 50, 100)
ORTHO_TOL = 1e-8
WEIGHT_SINGULARITY = 1e-16


class SuiteDataError(ValueError):
    """Malformed or inconsistent suite data."""


class MissingSuiteFileError(FileNotFoundError):
    """Suite data file does not exist."""


class NonOrthogonalMatrixError(SuiteDataError):
    """A rotation matrix failed the orthogonality check."""


# ---------------------------------------------------------------------------
# Base kernels.  Each maps (..., n) -> (...) and is 0 at its canonical
# optimum: the origin for most, all-ones for rosenbrock and
# griewank_rosenbrock, all-negative-ones for happycat and hgbat.
# ---------------------------------------------------------------------------


def elliptic(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    exponents = np.arange(n) / max(n - 1, 1)
    return np.sum(10.0 ** (6.0 * exponents) * z * z, axis=-1)


def bent_cigar(z: np.ndarray) -> np.ndarray:
    return z[..., 0] ** 2 + 1e6 * np.sum(z[..., 1:] ** 2, axis=-1)


def discus(z: np.ndarray) -> np.ndarray:
    return 1e6 * z[..., 0] ** 2 + np.sum(z[..., 1:] ** 2, axis=-1)


def rosenbrock(z: np.ndarray) -> np.ndarray:
    a, b = z[..., :-1], z[..., 1:]
    return np.sum(100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2, axis=-1)


def ackley(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    rms = np.sqrt(np.sum(z * z, axis=-1) / n)
    mean_cos = np.sum(np.cos(2.0 * np.pi * z), axis=-1) / n
    return -20.0 * np.exp(-0.2 * rms) - np.exp(mean_cos) + 20.0 + np.e


_WEIER_A = 0.5
_WEIER_B = 3.0
_WEIER_KMAX = 20
_WEIER_AK = _WEIER_A ** np.arange(_WEIER_KMAX + 1)
_WEIER_BK = _WEIER_B ** np.arange(_WEIER_KMAX + 1)
_WEIER_CONST = float(np.sum(_WEIER_AK * np.cos(np.pi * _WEIER_BK)))


def weierstrass(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    angles = 2.0 * np.pi * _WEIER_BK * (z[..., None] + 0.5)
    per_dim = np.sum(_WEIER_AK * np.cos(angles), axis=-1)
    return np.sum(per_dim, axis=-1) - n * _WEIER_CONST


def griewank(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    quad = np.sum(z * z, axis=-1) / 4000.0
    prod = np.prod(np.cos(z / np.sqrt(np.arange(1, n + 1))), axis=-1)
    return quad - prod + 1.0


def rastrigin(z: np.ndarray) -> np.ndarray:
    return np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0, axis=-1)


def mod_schwefel(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    w = z + 4.209687462275036e2
    aw = np.abs(w)
    in_range = w * np.sin(np.sqrt(aw))
    high = (500.0 - np.mod(w, 500.0)) * np.sin(
        np.sqrt(np.abs(500.0 - np.mod(w, 500.0)))
    ) - (w - 500.0) ** 2 / (10000.0 * n)
    low = (np.mod(aw, 500.0) - 500.0) * np.sin(
        np.sqrt(np.abs(np.mod(aw, 500.0) - 500.0))
    ) - (w + 500.0) ** 2 / (10000.0 * n)
    g = np.where(aw <= 500.0, in_range, np.where(w > 500.0, high, low))
    return 418.9829 * n - np.sum(g, axis=-1)


_KATS_POW2 = 2.0 ** np.arange(1, 33)


def katsuura(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    t = _KATS_POW2 * z[..., None]
    frac = np.sum(np.abs(t - np.round(t)) / _KATS_POW2, axis=-1)
    factors = (1.0 + np.arange(1, n + 1) * frac) ** (10.0 / n**1.2)
    coef = 10.0 / n**2
    return np.prod(factors, axis=-1) * coef - coef


def happycat(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    r2 = np.sum(z * z, axis=-1)
    s = np.sum(z, axis=-1)
    return np.abs(r2 - n) ** 0.25 + (0.5 * r2 + s) / n + 0.5


def hgbat(z: np.ndarray) -> np.ndarray:
    n = z.shape[-1]
    r2 = np.sum(z * z, axis=-1)
    s = np.sum(z, axis=-1)
    return np.sqrt(np.abs(r2 * r2 - s * s)) + (0.5 * r2 + s) / n + 0.5


def _griewank1(t: np.ndarray) -> np.ndarray:
    return t * t / 4000.0 - np.cos(t) + 1.0


def griewank_rosenbrock(z: np.ndarray) -> np.ndarray:
    zn = np.concatenate([z, z[..., :1]], axis=-1)
    a, b = zn[..., :-1], zn[..., 1:]
    pair = 100.0 * (a * a - b) ** 2 + (a - 1.0) ** 2
    return np.sum(_griewank1(pair), axis=-1)


def _scaffer_pair(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    q = a * a + b * b
    return 0.5 + (np.sin(np.sqrt(q)) ** 2 - 0.5) / (1.0 + 0.001 * q) ** 2


def expanded_scaffer_f6(z: np.ndarray) -> np.ndarray:
    zn = np.concatenate([z, z[..., :1]], axis=-1)
    return np.sum(_scaffer_pair(zn[..., :-1], zn[..., 1:]), axis=-1)


@dataclasses.dataclass(frozen=True)
class KernelInfo:
    """A base kernel with its canonical input scale and recentering.

    The transform pipeline is ``z = M @ (scale * (x - o)) + recenter``;
    ``recenter`` moves the evaluation point onto the kernel's interior
    optimum (+1 for rosenbrock-style kernels, -1 for happycat/hgbat).
    """

    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    scale: float = 1.0
    recenter: float = 0.0


KERNELS: dict[str, KernelInfo] = {
    "elliptic": KernelInfo("elliptic", elliptic),
    "bent_cigar": KernelInfo("bent_cigar", bent_cigar),
    "discus": KernelInfo("discus", discus),
    "rosenbrock": KernelInfo("rosenbrock", rosenbrock, 2.048 / 100.0, 1.0),
    "ackley": KernelInfo("ackley", ackley),
    "weierstrass": KernelInfo("weierstrass", weierstrass, 0.5 / 100.0),
    "griewank": KernelInfo("griewank", griewank, 600.0 / 100.0),
    "rastrigin": KernelInfo("rastrigin", rastrigin, 5.12 / 100.0),
    "mod_schwefel": KernelInfo("mod_schwefel", mod_schwefel, 1000.0 / 100.0),
    "katsuura": KernelInfo("katsuura", katsuura, 5.0 / 100.0),
    "happycat": KernelInfo("happycat", happycat, 5.0 / 100.0, -1.0),
    "hgbat": KernelInfo("hgbat", hgbat, 5.0 / 100.0, -1.0),
    "griewank_rosenbrock": KernelInfo("griewank_rosenbrock", griewank_rosenbrock, 5.0 / 100.0, 1.0),
    "expanded_scaffer_f6": KernelInfo("expanded_scaffer_f6", expanded_scaffer_f6),
}


# ---------------------------------------------------------------------------
# Suite structure: which kernel(s) each function uses.
# ---------------------------------------------------------------------------

# F1-F16: (kernel name, rotated?).  Unrotated rows (F8, F10) keep an
# explicit identity matrix so every function carries uniform data.
SIMPLE_SPECS: dict[int, tuple[str, bool]] = {
    1: ("elliptic", True),
    2: ("bent_cigar", True),
    3: ("discus", True),
    4: ("rosenbrock", True),
    5: ("ackley", True),
    6: ("weierstrass", True),
    7: ("griewank", True),
    8: ("rastrigin", False),
    9: ("rastrigin", True),
    10: ("mod_schwefel", False),
    11: ("mod_schwefel", True),
    12: ("katsuura", True),
    13: ("happycat", True),
    14: ("hgbat", True),
    15: ("griewank_rosenbrock", True),
    16: ("expanded_scaffer_f6", True),
}

# F17-F22: (kernel names in chunk order, proportions).
HYBRID_SPECS: dict[int, tuple[tuple[str, ...], tuple[float, ...]]] = {
    17: (("mod_schwefel", "rastrigin", "elliptic"), (0.3, 0.3, 0.4)),
    18: (("bent_cigar", "hgbat", "rastrigin"), (0.3, 0.3, 0.4)),
    19: (("griewank", "weierstrass", "rosenbrock", "expanded_scaffer_f6"), (0.2, 0.2, 0.3, 0.3)),
    20: (("hgbat", "discus", "griewank_rosenbrock", "rastrigin"), (0.2, 0.2, 0.3, 0.3)),
    21: (
        ("expanded_scaffer_f6", "hgbat", "rosenbrock", "mod_schwefel", "elliptic"),
        (0.1, 0.2, 0.2, 0.2, 0.3),
    ),
    22: (
        ("katsuura", "happycat", "griewank_rosenbrock", "mod_schwefel", "ackley"),
        (0.1, 0.2, 0.2, 0.2, 0.3),
    ),
}

# F23-F30: members given as (mimicked function id, lambda weight); the
# i-th member adds a member bias of 100*i.  Sigma lists control the
# distance falloff of the blend weights.
COMPOSITION_SPECS: dict[int, tuple[tuple[tuple[int, float], ...], tuple[float, ...]]] = {
    23: (((4, 1.0), (1, 1e-6), (2, 1e-26), (3, 1e-6), (1, 1e-6)), (10, 20, 30, 40, 50)),
    24: (((10, 1.0), (9, 1.0), (14, 1.0)), (20, 20, 20)),
    25: (((11, 0.25), (9, 1.0), (1, 1e-7)), (10, 30, 50)),
    26: (((11, 0.25), (13, 1.0), (1, 1e-7), (6, 2.5), (7, 10.0)), (10, 10, 10, 10, 10)),
    27: (((14, 10.0), (9, 10.0), (11, 2.5), (6, 25.0), (1, 1e-6)), (10, 10, 10, 20, 20)),
    28: (((15, 2.5), (9, 10.0), (11, 2.5), (16, 5e-4), (1, 1e-6)), (10, 20, 30, 40, 50)),
    29: (((17, 1.0), (18, 1.0), (19, 1.0)), (10, 30, 50)),
    30: (((20, 1.0), (21, 1.0), (22, 1.0)), (10, 30, 50)),
}

FUNCTION_IDS = tuple(range(1, 31))


def function_bias(func_id: int) -> float:
    return 100.0 * func_id


def hybrid_chunk_sizes(dim: int, proportions: Sequence[float]) -> list[int]:
    """Chunk sizes: ``ceil(p_k * dim)`` for all but the last, remainder last."""
    sizes = [math.ceil(p * dim) for p in proportions[:-1]]
    sizes.append(dim - sum(sizes))
    if any(s <= 0 for s in sizes):
        raise SuiteDataError(
            f"dimension {dim} leaves an empty chunk for proportions {tuple(proportions)}"
        )
    return sizes


def check_orthogonal(m: np.ndarray, tol: float = ORTHO_TOL, context: str = "") -> None:
    err = np.max(np.abs(m.T @ m - np.eye(m.shape[0])))
    if err > tol:
        raise NonOrthogonalMatrixError(
            f"rotation matrix{' for ' + context if context else ''} is not orthogonal "
            f"(max deviation {err:.3e} > {tol:.0e})"
        )


# ---------------------------------------------------------------------------
# Transform data and evaluators.
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class TransformData:
    """Shift/rotation/scale/bias applied around one base kernel."""

    shift: np.ndarray
    rotation: np.ndarray
    scale: float
    bias: float


def _apply_transform(x: np.ndarray, shift: np.ndarray, rotation: np.ndarray,
                     kernel: KernelInfo) -> np.ndarray:
    y = kernel.scale * (x - shift)
    z = y @ rotation.T
    if kernel.recenter:
        z = z + kernel.recenter
    return z


@dataclasses.dataclass(frozen=True)
class SimpleFunction:
    """Shifted (optionally rotated) base kernel plus bias."""

    func_id: int
    kernel: KernelInfo
    shift: np.ndarray
    rotation: np.ndarray
    bias: float

    def rebased(self, x: np.ndarray) -> np.ndarray:
        z = _apply_transform(x, self.shift, self.rotation, self.kernel)
        return self.kernel.fn(z)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.rebased(x) + self.bias


@dataclasses.dataclass(frozen=True)
class HybridFunction:
    """Shift, permute, split into chunks, rotate each chunk into its kernel."""

    func_id: int
    kernels: tuple[KernelInfo, ...]
    shift: np.ndarray
    permutation: np.ndarray  # 0-based, length dim
    chunk_rotations: tuple[np.ndarray, ...]
    bias: float

    def rebased(self, x: np.ndarray) -> np.ndarray:
        y = (x - self.shift)[..., self.permutation]
        total = 0.0
        start = 0
        for kernel, rot in zip(self.kernels, self.chunk_rotations):
            size = rot.shape[0]
            chunk = y[..., start : start + size]
            z = (kernel.scale * chunk) @ rot.T
            if kernel.recenter:
                z = z + kernel.recenter
            total = total + kernel.fn(z)
            start += size
        return total

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.rebased(x) + self.bias


def composition_weights(x: np.ndarray, shifts: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    """Normalized distance-based blend weights, shape ``(..., n_members)``.

    Raw weight ``w_i = exp(-d_i / (2 * dim * sigma_i**2)) / sqrt(d_i)``
    with ``d_i`` the squared distance to member ``i``'s optimum.  If some
    ``d_i`` falls below the singularity cutoff that member takes weight 1
    and all others 0; otherwise weights normalize to sum 1.
    """
    x = np.asarray(x, dtype=float)
    dim = x.shape[-1]
    diff = x[..., None, :] - shifts  # (..., n, dim)
    d = np.sum(diff * diff, axis=-1)  # (..., n)
    singular = d < WEIGHT_SINGULARITY
    d_safe = np.where(singular, 1.0, d)
    raw = np.exp(-d / (2.0 * dim * sigmas**2)) / np.sqrt(d_safe)
    any_singular = np.any(singular, axis=-1, keepdims=True)
    # First singular member (if any) takes all the weight.
    first = np.cumsum(singular, axis=-1) == 1
    onehot = (singular & first).astype(float)
    raw = np.where(any_singular, onehot, raw)
    return raw / np.sum(raw, axis=-1, keepdims=True)


@dataclasses.dataclass(frozen=True)
class CompositionFunction:
    """Distance-weighted blend of re-based member functions plus bias."""

    func_id: int
    members: tuple  # SimpleFunction | HybridFunction, evaluated via .rebased
    lambdas: np.ndarray
    sigmas: np.ndarray
    member_biases: np.ndarray
    bias: float

    @property
    def member_shifts(self) -> np.ndarray:
        return np.stack([m.shift for m in self.members])

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        weights = composition_weights(x, self.member_shifts, self.sigmas)
        values = np.stack(
            [lam * m.rebased(x) + b
             for m, lam, b in zip(self.members, self.lambdas, self.member_biases)],
            axis=-1,
        )
        return np.sum(weights * values, axis=-1) + self.bias


SuiteFunction = SimpleFunction | HybridFunction | CompositionFunction


@dataclasses.dataclass(frozen=True)
class Suite:
    """All 30 functions for one dimension, plus provenance."""

    dim: int
    functions: dict[int, SuiteFunction]
    source: str

    def problem(self, func_id: int) -> Problem:
        fn = self.functions[func_id]
        return Problem(
            name=f"cec14-f{func_id}",
            dim=self.dim,
            bounds=Bounds.cube(self.dim, SEARCH_LOWER, SEARCH_UPPER),
            objective=fn,
            known_fmin=function_bias(func_id),
        )

    def problems(self) -> list[Problem]:
        return [self.problem(i) for i in FUNCTION_IDS]


# ---------------------------------------------------------------------------
# Deterministic generator.
# ---------------------------------------------------------------------------


def random_rotation(rng: np.random.Generator, n: int) -> np.ndarray:
    """Orthogonal matrix from QR of a standard-normal draw, sign-fixed."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diagonal(r))


def _identity(n: int) -> np.ndarray:
    return np.eye(n)


def _gen_shift(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.uniform(-SHIFT_RANGE, SHIFT_RANGE, dim)


def _build_simple(func_id: int, dim: int, shift, rotation, bias_override=None) -> SimpleFunction:
    kernel_name, _ = SIMPLE_SPECS[func_id]
    bias = function_bias(func_id) if bias_override is None else bias_override
    return SimpleFunction(func_id, KERNELS[kernel_name], shift, rotation, bias)


def _build_hybrid(func_id: int, dim: int, shift, permutation, rotations,
                  bias_override=None) -> HybridFunction:
    kernel_names, proportions = HYBRID_SPECS[func_id]
    sizes = hybrid_chunk_sizes(dim, proportions)
    if [r.shape[0] for r in rotations] != sizes:
        raise SuiteDataError(
            f"function {func_id}: chunk rotation sizes "
            f"{[r.shape[0] for r in rotations]} do not match expected {sizes}"
        )
    bias = function_bias(func_id) if bias_override is None else bias_override
    kernels = tuple(KERNELS[k] for k in kernel_names)
    return HybridFunction(func_id, kernels, shift, permutation, tuple(rotations), bias)


def _generate_member(mimic_id: int, dim: int, rng: np.random.Generator):
    """Member data for a composition: a zero-bias simple or hybrid function."""
    shift = _gen_shift(rng, dim)
    if mimic_id in SIMPLE_SPECS:
        _, rotated = SIMPLE_SPECS[mimic_id]
        rotation = random_rotation(rng, dim) if rotated else _identity(dim)
        return _build_simple(mimic_id, dim, shift, rotation, bias_override=0.0)
    kernel_names, proportions = HYBRID_SPECS[mimic_id]
    sizes = hybrid_chunk_sizes(dim, proportions)
    permutation = rng.permutation(dim)
    rotations = [random_rotation(rng, s) for s in sizes]
    return _build_hybrid(mimic_id, dim, shift, permutation, rotations, bias_override=0.0)


def generate_suite(seed: int, dim: int) -> Suite:
    """Build all 30 functions deterministically from ``(seed, dim)``.

    Shifts are uniform in ``[-80, 80]``, rotations come from QR
    orthogonalization of seeded standard-normal matrices, permutations
    are seeded.  Dimensions outside the standard CEC set are allowed but
    tagged nonstandard in the suite's ``source`` string.
    """
    functions: dict[int, SuiteFunction] = {}
    for func_id in FUNCTION_IDS:
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((seed, dim, func_id)))
        )
        if func_id in SIMPLE_SPECS:
            _, rotated = SIMPLE_SPECS[func_id]
            shift = _gen_shift(rng, dim)
            rotation = random_rotation(rng, dim) if rotated else _identity(dim)
            functions[func_id] = _build_simple(func_id, dim, shift, rotation)
        elif func_id in HYBRID_SPECS:
            _, proportions = HYBRID_SPECS[func_id]
            sizes = hybrid_chunk_sizes(dim, proportions)
            shift = _gen_shift(rng, dim)
            permutation = rng.permutation(dim)
            rotations = [random_rotation(rng, s) for s in sizes]
            functions[func_id] = _build_hybrid(func_id, dim, shift, permutation, rotations)
        else:
            member_specs, sigmas = COMPOSITION_SPECS[func_id]
            members = tuple(_generate_member(mid, dim, rng) for mid, _ in member_specs)
            lambdas = np.array([lam for _, lam in member_specs])
            member_biases = 100.0 * np.arange(len(member_specs), dtype=float)
            functions[func_id] = CompositionFunction(
                func_id, members, lambdas, np.asarray(sigmas, dtype=float),
                member_biases, function_bias(func_id),
            )
    tag = "" if dim in STANDARD_DIMS else ", nonstandard dim"
    return Suite(dim, functions, f"generated(seed={seed}, dim={dim}{tag})")


# ---------------------------------------------------------------------------
# Portable text format.
#
#   cec14 <dim> <function-id>
#   shift: <dim reals>
#   perm: <dim 1-based indices>          (hybrids / hybrid members)
#   rot: <n>                             (followed by n lines of n reals)
#   sigma: / lambda: / bias:             (composition blocks)
#
# Whitespace-separated, '#' starts a comment.  Hybrid blocks carry one
# rot section per chunk; composition blocks repeat shift/perm/rot
# sections once per member.
# ---------------------------------------------------------------------------


def _fmt_reals(values) -> str:
    return " ".join(format(float(v), ".17g") for v in values)


def _write_member_data(lines: list[str], fn) -> None:
    lines.append(f"shift: {_fmt_reals(fn.shift)}")
    if isinstance(fn, HybridFunction):
        lines.append("perm: " + " ".join(str(int(p) + 1) for p in fn.permutation))
        rotations = fn.chunk_rotations
    else:
        rotations = (fn.rotation,)
    for rot in rotations:
        n = rot.shape[0]
        lines.append(f"rot: {n}")
        for row in rot:
            lines.append(_fmt_reals(row))


def save_suite(suite: Suite, path: str | Path) -> None:
    """Write the suite's transform data as the portable text format."""
    lines = [f"# cec14-style suite data, {suite.source}"]
    for func_id in FUNCTION_IDS:
        fn = suite.functions[func_id]
        lines.append("")
        lines.append(f"cec14 {suite.dim} {func_id}")
        if isinstance(fn, CompositionFunction):
            lines.append(f"sigma: {_fmt_reals(fn.sigmas)}")
            lines.append(f"lambda: {_fmt_reals(fn.lambdas)}")
            lines.append(f"bias: {_fmt_reals(fn.member_biases)}")
            for member in fn.members:
                _write_member_data(lines, member)
        else:
            _write_member_data(lines, fn)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


class _Tokens:
    """Line-oriented cursor over the suite file with comments stripped."""

    def __init__(self, text: str):
        self.lines = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                self.lines.append(line)
        self.pos = 0

    def peek(self) -> str | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def next(self) -> str:
        line = self.peek()
        if line is None:
            raise SuiteDataError("unexpected end of suite data file")
        self.pos += 1
        return line

    def expect(self, prefix: str, context: str) -> str:
        line = self.next()
        if not line.startswith(prefix):
            raise SuiteDataError(f"{context}: expected '{prefix}' line, found {line!r}")
        return line[len(prefix):].strip()


def _parse_reals(text: str, count: int, context: str) -> np.ndarray:
    parts = text.split()
    if len(parts) != count:
        raise SuiteDataError(f"{context}: expected {count} values, found {len(parts)}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise SuiteDataError(f"{context}: non-numeric value ({exc})") from None


def _parse_rotation(tok: _Tokens, expected_n: int, context: str) -> np.ndarray:
    head = tok.expect("rot:", context)
    try:
        n = int(head.split()[0]) if head else expected_n
    except ValueError:
        raise SuiteDataError(f"{context}: malformed rot header {head!r}") from None
    if n != expected_n:
        raise SuiteDataError(f"{context}: rotation is {n}x{n}, expected {expected_n}x{expected_n}")
    rows = [_parse_reals(tok.next(), n, context) for _ in range(n)]
    m = np.stack(rows)
    check_orthogonal(m, context=context)
    return m


def _parse_member(tok: _Tokens, mimic_id: int, dim: int, context: str, bias_override=None):
    shift = _parse_reals(tok.expect("shift:", context), dim, context)
    if not np.all((shift > SEARCH_LOWER) & (shift < SEARCH_UPPER)):
        raise SuiteDataError(f"{context}: shift lies outside the search bounds")
    if mimic_id in SIMPLE_SPECS:
        rotation = _parse_rotation(tok, dim, context)
        return _build_simple(mimic_id, dim, shift, rotation, bias_override)
    _, proportions = HYBRID_SPECS[mimic_id]
    sizes = hybrid_chunk_sizes(dim, proportions)
    perm_raw = _parse_reals(tok.expect("perm:", context), dim, context)
    permutation = perm_raw.astype(int) - 1
    if sorted(permutation.tolist()) != list(range(dim)):
        raise SuiteDataError(f"{context}: perm is not a permutation of 1..{dim}")
    rotations = [_parse_rotation(tok, s, context) for s in sizes]
    return _build_hybrid(mimic_id, dim, shift, permutation, rotations, bias_override)


def load_suite(path: str | Path, dim: int | None = None) -> Suite:
    """Parse a suite data file, validating structure and orthogonality.

    Raises :class:`MissingSuiteFileError` if the file is absent,
    :class:`NonOrthogonalMatrixError` for a bad rotation (naming the
    function), and :class:`SuiteDataError` for dimension or structure
    mismatches.
    """
    path = Path(path)
    if not path.exists():
        raise MissingSuiteFileError(f"suite data file not found: {path}")
    tok = _Tokens(path.read_text(encoding="utf-8"))
    functions: dict[int, SuiteFunction] = {}
    file_dim: int | None = None
    while tok.peek() is not None:
        header = tok.next().split()
        if len(header) != 3 or header[0] != "cec14":
            raise SuiteDataError(f"malformed header line: {' '.join(header)!r}")
        try:
            block_dim, func_id = int(header[1]), int(header[2])
        except ValueError:
            raise SuiteDataError(f"malformed header line: {' '.join(header)!r}") from None
        if func_id not in FUNCTION_IDS:
            raise SuiteDataError(f"unknown function id {func_id}")
        if file_dim is None:
            file_dim = block_dim
        elif block_dim != file_dim:
            raise SuiteDataError(
                f"function {func_id}: dimension {block_dim} conflicts with {file_dim}"
            )
        if dim is not None and block_dim != dim:
            raise SuiteDataError(
                f"suite file has dimension {block_dim}, expected {dim}"
            )
        context = f"f{func_id}"
        if func_id in COMPOSITION_SPECS:
            member_specs, sigmas = COMPOSITION_SPECS[func_id]
            n = len(member_specs)
            file_sigmas = _parse_reals(tok.expect("sigma:", context), n, context)
            file_lambdas = _parse_reals(tok.expect("lambda:", context), n, context)
            file_biases = _parse_reals(tok.expect("bias:", context), n, context)
            exp_sigmas = np.asarray(sigmas, dtype=float)
            exp_lambdas = np.array([lam for _, lam in member_specs])
            exp_biases = 100.0 * np.arange(n, dtype=float)
            if not (np.allclose(file_sigmas, exp_sigmas)
                    and np.allclose(file_lambdas, exp_lambdas)
                    and np.allclose(file_biases, exp_biases)):
                raise SuiteDataError(f"{context}: sigma/lambda/bias lines do not match the suite")
            members = tuple(
                _parse_member(tok, mid, block_dim, f"{context} member {i + 1}", bias_override=0.0)
                for i, (mid, _) in enumerate(member_specs)
            )
            functions[func_id] = CompositionFunction(
                func_id, members, exp_lambdas, exp_sigmas, exp_biases, function_bias(func_id)
            )
        else:
            functions[func_id] = _parse_member(tok, func_id, block_dim, context)
    missing = [i for i in FUNCTION_IDS if i not in functions]
    if missing:
        raise SuiteDataError(f"suite file is missing functions {missing}")
    assert file_dim is not None
    return Suite(file_dim, functions, f"file({path})")


def load_or_generate(path: str | Path | None, seed: int | None, dim: int) -> Suite:
    """Load the suite from ``path`` when given, else generate from ``seed``."""
    if path is not None:
        p = Path(path)
        if p.exists():
            return load_suite(p, dim)
        if seed is None:
            raise MissingSuiteFileError(f"suite data file not found: {p}")
    if seed is None:
        raise SuiteDataError("either a suite data file or a generator seed is required")
    return generate_suite(seed, dim)
