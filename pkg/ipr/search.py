"""
Desk-scale verification of image partition regularity.

For a matrix A, a number of colors r and a universe [1..N], every coloring
is searched for a witness x in [1..x_max]^q whose image A x is a set of
integers in [1..N] of one color. A negative answer (an escaping coloring)
only says that no witness exists within these bounds.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import ceil, lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config.settings import get_settings
from utils import BaseEngine, setup_logger

from .coloring import Coloring, iter_counters, mono_check, total_colorings
from .matrixcore import FinMatrix, mat_apply

logger = setup_logger("ipr.search")


@dataclass(frozen=True)
class Witness:
    x: Tuple[int, ...]
    image: Tuple[int, ...]
    color: int


class VerdictKind(str, Enum):
    FORCED_AT_SCALE = "ForcedAtScale"
    ESCAPING_COLORING = "EscapingColoring"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class SearchBounds:
    colors: int
    universe: int
    x_max: int
    strong: bool = False
    symmetry_break: bool = True

    def __post_init__(self):
        if self.colors < 1 or self.universe < 1 or self.x_max < 1:
            raise ValueError("colors, universe and x_max must be positive integers")


@dataclass
class Verdict:
    kind: VerdictKind
    bounds: SearchBounds
    checked: int
    coloring: Optional[Coloring] = None
    counter: Optional[int] = None
    resume: Optional[int] = None
    witnesses: Dict[int, Witness] = field(default_factory=dict)


def distinct_rows_distinct(A: FinMatrix, image: Sequence[object]) -> bool:
    """Entries of the image at unequal rows of A are unequal."""
    owner = {}
    for row, value in zip(A.rows, image):
        if owner.setdefault(value, row) != row:
            return False
    return True


class _CompiledMatrix:
    """Integer-scaled rows and per-column bookkeeping for the pruned search."""

    def __init__(self, A: FinMatrix):
        self.matrix = A
        self.nrows, self.ncols = A.shape
        self.has_zero_row = any(row.is_zero for row in A.rows)

        self.denoms = []
        scaled_rows = []
        for row in A.rows:
            den = lcm(*(value.denominator for _, value in row.entries)) if row.entries else 1
            self.denoms.append(den)
            scaled_rows.append([(col, int(value * den)) for col, value in row.entries])

        q = self.ncols
        self.terms: List[List[Tuple[int, int]]] = [[] for _ in range(q)]
        self.closing: List[List[int]] = [[] for _ in range(q)]
        self.bounded: List[List[Tuple[int, int]]] = [[] for _ in range(q)]
        self.initial_floor: List[Tuple[int, int]] = []

        for i, entries in enumerate(scaled_rows):
            if not entries:
                continue
            for col, coef in entries:
                self.terms[col].append((i, coef))
            self.closing[entries[-1][0]].append(i)

            # Smallest possible remaining contribution, when no negative coefficient is left
            rest = 0
            nonnegative = True
            for position in range(len(entries) - 1, -1, -1):
                col, coef = entries[position]
                if position < len(entries) - 1 and nonnegative:
                    self.bounded[col].append((i, rest))
                rest += coef
                nonnegative = nonnegative and coef >= 0
            if all(coef >= 0 for _, coef in entries):
                self.initial_floor.append((i, rest))

        self.coef_at = [dict(column) for column in self.terms]

    def search(self, colors: Sequence[int], x_max: int, strong: bool) -> Optional[Witness]:
        """First witness in lexicographic x order, or None."""
        if self.nrows == 0:
            return Witness(x=(1,) * self.ncols, image=(), color=0)
        if self.has_zero_row:
            return None

        limit = len(colors)
        denoms = self.denoms
        for i, floor in self.initial_floor:
            if floor > limit * denoms[i]:
                return None

        q = self.ncols
        sums = [0] * self.nrows
        image = [0] * self.nrows
        x = [0] * q
        owner: Dict[int, object] = {}
        rows = self.matrix.rows

        def descend(k: int, color: Optional[int]) -> Optional[int]:
            if k == q:
                return color
            terms = self.terms[k]
            closing = self.closing[k]
            bounded = self.bounded[k]
            coef_here = self.coef_at[k]
            base = [sums[i] for i, _ in terms]

            found = None
            for v in range(1, x_max + 1):
                for (i, coef), start in zip(terms, base):
                    sums[i] = start + coef * v

                ok = True
                stop = False
                branch_color = color
                added = []
                for i in closing:
                    total, den = sums[i], denoms[i]
                    if total % den:
                        ok = False
                        break
                    value = total // den
                    if value > limit or value < 1:
                        ok = False
                        coef = coef_here[i]
                        stop = (coef > 0) if value > limit else (coef < 0)
                        break
                    c = colors[value - 1]
                    if branch_color is None:
                        branch_color = c
                    elif c != branch_color:
                        ok = False
                        break
                    image[i] = value
                    if strong:
                        holder = owner.get(value)
                        if holder is None:
                            owner[value] = rows[i]
                            added.append(value)
                        elif holder != rows[i]:
                            ok = False
                            break

                if ok:
                    for i, rest in bounded:
                        if sums[i] + rest > limit * denoms[i]:
                            ok = False
                            stop = coef_here[i] > 0
                            break

                if ok:
                    x[k] = v
                    found = descend(k + 1, branch_color)

                for value in added:
                    del owner[value]
                if found is not None or stop:
                    break

            for (i, _), start in zip(terms, base):
                sums[i] = start
            return found

        color = descend(0, None)
        if color is None:
            return None
        return Witness(x=tuple(x), image=tuple(image), color=color)


def find_witness(A: FinMatrix, c: Coloring, x_max: int, strong: bool = False) -> Optional[Witness]:
    """
    First witness for coloring c in lexicographic x order over [1..x_max]^q.

    Rows are evaluated as soon as their last column is fixed; a determined
    row that is non-integral, out of range, off-color or (strong) equal to an
    unequal row's entry prunes the branch.
    """
    if x_max < 1:
        raise ValueError("x_max must be a positive integer")
    return _CompiledMatrix(A).search(c.colors, x_max, strong)


def brute_force_witness(A: FinMatrix, c: Coloring, x_max: int,
                        strong: bool = False) -> Optional[Witness]:
    """Same answer as find_witness, by trying every x without pruning."""
    if A.nrows == 0:
        return Witness(x=(1,) * A.ncols, image=(), color=0)
    for x in itertools.product(range(1, x_max + 1), repeat=A.ncols):
        image = mat_apply(A, x)
        color = mono_check(image, c)
        if color is None:
            continue
        if strong and not distinct_rows_distinct(A, image):
            continue
        return Witness(x=tuple(x), image=tuple(int(v) for v in image), color=color)
    return None


@dataclass
class ChunkResult:
    checked: int
    failure: Optional[Tuple[int, Coloring]] = None
    samples: List[Tuple[int, Witness]] = field(default_factory=list)


class ScaleVerifier(BaseEngine):
    """Walks canonical colorings in counter chunks and looks for witnesses."""

    def __init__(self,
                 A: FinMatrix,
                 bounds: SearchBounds,
                 workers: int = 1,
                 budget: Optional[int] = None,
                 resume: int = 0,
                 chunk_size: Optional[int] = None,
                 samples: Optional[int] = None,
                 show_progress: bool = False,
                 log_level: str = "INFO"):
        super().__init__("verify", workers, show_progress, log_level)
        settings = get_settings()

        self.A = A
        self.bounds = bounds
        self.budget = settings.BUDGET if budget is None else budget
        self.chunk_size = settings.CHUNK_SIZE if chunk_size is None else chunk_size
        self.sample_limit = settings.SAMPLE_WITNESSES if samples is None else samples
        self.total = total_colorings(bounds.universe, bounds.colors)

        if self.budget < 1 or self.chunk_size < 1:
            raise ValueError("budget and chunk size must be positive")
        if not 0 <= resume <= self.total:
            raise ValueError(f"resume offset {resume} outside 0..{self.total}")
        self.resume = resume

        self.compiled = _CompiledMatrix(A)

        # Aggregated run state, only touched by accept_chunk
        self.checked = 0
        self.failure: Optional[Tuple[int, Coloring]] = None
        self.witnesses: List[Tuple[int, Witness]] = []
        self.resume_at: Optional[int] = None

    def chunk_range(self, index: int) -> Tuple[int, int]:
        lo = self.resume + index * self.chunk_size
        return lo, min(lo + self.chunk_size, self.total)

    def get_total_chunks(self) -> int:
        return ceil((self.total - self.resume) / self.chunk_size)

    def witness_for(self, coloring: Coloring) -> Optional[Witness]:
        return self.compiled.search(coloring.colors, self.bounds.x_max, self.bounds.strong)

    def scan_chunk(self, index: int) -> ChunkResult:
        lo, hi = self.chunk_range(index)
        result = ChunkResult(checked=0)
        n, r = self.bounds.universe, self.bounds.colors
        for counter, colors in iter_counters(n, r, self.bounds.symmetry_break, lo, hi):
            coloring = Coloring(n, r, colors)
            witness = self.witness_for(coloring)
            result.checked += 1
            if witness is None:
                result.failure = (counter, coloring)
                break
            if len(result.samples) < self.sample_limit:
                result.samples.append((counter, witness))
        return result

    def count_items(self, result: ChunkResult) -> int:
        return result.checked

    def accept_chunk(self, index: int, result: ChunkResult) -> bool:
        self.checked += result.checked
        room = self.sample_limit - len(self.witnesses)
        if room > 0:
            self.witnesses.extend(result.samples[:room])

        if result.failure is not None:
            self.failure = result.failure
            logger.debug(f"escaping coloring at counter {result.failure[0]}")
            return False

        _, hi = self.chunk_range(index)
        if self.checked >= self.budget and hi < self.total:
            self.resume_at = hi
            logger.debug(f"budget of {self.budget} colorings spent, resume at {hi}")
            return False
        return True

    def verdict(self) -> Verdict:
        """Run the search and build the verdict."""
        self.run_all()
        witnesses = dict(self.witnesses)
        if self.failure is not None:
            counter, coloring = self.failure
            return Verdict(VerdictKind.ESCAPING_COLORING, self.bounds, self.checked,
                           coloring=coloring, counter=counter, witnesses=witnesses)
        if self.resume_at is not None:
            return Verdict(VerdictKind.BUDGET_EXHAUSTED, self.bounds, self.checked,
                           resume=self.resume_at, witnesses=witnesses)
        return Verdict(VerdictKind.FORCED_AT_SCALE, self.bounds, self.checked,
                       witnesses=witnesses)


class OracleVerifier(ScaleVerifier):
    """Reference verifier: every coloring, every x, no pruning."""

    def witness_for(self, coloring: Coloring) -> Optional[Witness]:
        return brute_force_witness(self.A, coloring, self.bounds.x_max, self.bounds.strong)


def verify_at_scale(A: FinMatrix, r: int, N: int, x_max: int,
                    strong: bool = False,
                    threads: int = 1,
                    budget: Optional[int] = None,
                    resume: int = 0,
                    symmetry_break: bool = True,
                    samples: Optional[int] = None,
                    show_progress: bool = False,
                    log_level: str = "INFO") -> Verdict:
    """
    Does every r-coloring of [1..N] admit a witness within [1..x_max]^q?

    Returns ForcedAtScale, EscapingColoring (the first failing coloring in
    counter order) or BudgetExhausted (with the counter to resume from).
    The verdict does not depend on the number of threads.
    """
    bounds = SearchBounds(colors=r, universe=N, x_max=x_max, strong=strong,
                          symmetry_break=symmetry_break)
    verifier = ScaleVerifier(A, bounds, workers=threads, budget=budget, resume=resume,
                             samples=samples, show_progress=show_progress,
                             log_level=log_level)
    return verifier.verdict()


def oracle_verdict(A: FinMatrix, r: int, N: int, x_max: int,
                   strong: bool = False) -> Verdict:
    """Brute-force verdict over all colorings (no symmetry breaking, no pruning)."""
    bounds = SearchBounds(colors=r, universe=N, x_max=x_max, strong=strong,
                          symmetry_break=False)
    return OracleVerifier(A, bounds, budget=total_colorings(N, r), samples=0).verdict()


def _recheck_witness(witness: Witness, A: FinMatrix, bounds: SearchBounds,
                     coloring: Coloring) -> bool:
    if len(witness.x) != A.ncols or len(witness.image) != A.nrows:
        return False
    if any(not 1 <= v <= bounds.x_max for v in witness.x):
        return False
    image = mat_apply(A, witness.x)
    if [Fraction(v) for v in witness.image] != image:
        return False
    if A.nrows and mono_check(image, coloring) != witness.color:
        return False
    if not 0 <= witness.color < coloring.r:
        return False
    if bounds.strong and not distinct_rows_distinct(A, image):
        return False
    return True


def recheck(subject: Union[Witness, Verdict], A: FinMatrix,
            bounds: Optional[SearchBounds] = None,
            coloring: Optional[Coloring] = None) -> bool:
    """
    Independently re-validate a witness or a verdict.

    A witness is recomputed against its coloring. An escaping coloring is
    confirmed by the brute-force search. Sample witnesses of other verdicts
    are rechecked one by one.
    """
    if isinstance(subject, Witness):
        if bounds is None or coloring is None:
            raise ValueError("rechecking a witness needs bounds and its coloring")
        return _recheck_witness(subject, A, bounds, coloring)

    verdict = subject
    if bounds is not None and bounds != verdict.bounds:
        return False
    b = verdict.bounds

    for counter, witness in verdict.witnesses.items():
        if not 0 <= counter < total_colorings(b.universe, b.colors):
            return False
        sample_coloring = Coloring.from_counter(counter, b.universe, b.colors)
        if not _recheck_witness(witness, A, b, sample_coloring):
            return False

    if verdict.kind == VerdictKind.ESCAPING_COLORING:
        c = verdict.coloring
        if c is None or c.n != b.universe or c.r != b.colors:
            return False
        if verdict.counter is not None and verdict.counter != c.counter:
            return False
        return brute_force_witness(A, c, b.x_max, b.strong) is None

    if verdict.kind == VerdictKind.BUDGET_EXHAUSTED:
        return verdict.resume is not None

    return True
