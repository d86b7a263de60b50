"""Accuracy-vs-coverage threshold game and its repetition-learning loop.

Two players bargain over the decision thresholds: one raises beta (in
steps, growing the rejection region), the other lowers alpha (growing
the acceptance region). Each round builds a 3x3 payoff table from the
current thresholds, takes a pure-strategy Nash equilibrium, and either
adopts its thresholds or stops. Stopping happens when the equilibrium is
the no-change cell, when the improving player's gain no longer exceeds
the other player's loss, or when every move would leave the valid
threshold range.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .info_table import EquivalenceClassTable
from .rational import fraction_str, to_fraction
from .regions import RegionError, ThresholdPair, accuracy, coverage, trisect


class GameError(ValueError):
    """Invalid game configuration or degenerate payoff table."""


class StopReason(str, Enum):
    PAYOFF_TRADEOFF = "payoff-tradeoff"
    RANGE_EXHAUSTED = "range-exhausted"
    NO_EQUILIBRIUM_CHANGE = "no-equilibrium-change"
    MAX_ROUNDS = "max-rounds"


@dataclass(frozen=True)
class GameConfig:
    """Game parameters.

    ``step`` is the common per-move threshold change; ``c_acc``/``c_cov``
    optionally override it per player. Exactly three strategies per
    player are supported: no change, one step, two steps.
    """

    step: Fraction = Fraction(3, 100)
    c_acc: Fraction | None = None
    c_cov: Fraction | None = None
    initial: ThresholdPair = ThresholdPair(Fraction(1), Fraction(0))
    max_rounds: int = 50
    strategies_per_player: int = 3

    def __post_init__(self):
        object.__setattr__(self, "step", to_fraction(self.step))
        for name in ("c_acc", "c_cov"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, to_fraction(value))
        if self.strategies_per_player != 3:
            raise GameError("exactly 3 strategies per player are supported")
        if self.max_rounds < 1:
            raise GameError("max_rounds must be at least 1")
        for s in (self.beta_step, self.alpha_step):
            if not (s > 0 and 2 * s < 1):
                raise GameError(
                    f"step must satisfy 0 < 2*step < 1, got {fraction_str(s)}"
                )

    @property
    def beta_step(self) -> Fraction:
        """Per-move increase of beta (the accuracy player's step)."""
        return self.c_acc if self.c_acc is not None else self.step

    @property
    def alpha_step(self) -> Fraction:
        """Per-move decrease of alpha (the coverage player's step)."""
        return self.c_cov if self.c_cov is not None else self.step


@dataclass(frozen=True)
class PayoffCell:
    """One strategy profile: moved thresholds and both payoffs.

    Invalid cells are moves that leave 0 <= beta < alpha <= 1 or make
    accuracy undefined; their payoffs are None.
    """

    alpha: Fraction
    beta: Fraction
    u_acc: Fraction | None
    u_cov: Fraction | None
    valid: bool

    @property
    def thresholds(self) -> ThresholdPair:
        return ThresholdPair(self.alpha, self.beta)


@dataclass(frozen=True)
class GameRound:
    initial: ThresholdPair
    grid: tuple  # 3x3 of PayoffCell; rows move beta, columns move alpha
    equilibrium: tuple | None
    adopted: bool
    result: ThresholdPair
    payoffs: tuple | None  # equilibrium (u_acc, u_cov)


@dataclass(frozen=True)
class GameTrace:
    rounds: tuple
    stop_reason: StopReason

    @property
    def final(self) -> ThresholdPair:
        return self.rounds[-1].result


def build_payoff_table(table: EquivalenceClassTable, t0: ThresholdPair,
                       cfg: GameConfig) -> list:
    """3x3 payoff grid from ``t0``: cell (i, j) raises beta by i steps and
    lowers alpha by j steps, with (accuracy, coverage) as payoffs."""
    grid = []
    for i in range(3):
        row = []
        beta = t0.beta + i * cfg.beta_step
        for j in range(3):
            alpha = t0.alpha - j * cfg.alpha_step
            if not (0 <= beta < alpha <= 1):
                row.append(PayoffCell(alpha, beta, None, None, False))
                continue
            t = ThresholdPair(alpha, beta)
            tri = trisect(table, t)
            try:
                u_acc = accuracy(table, tri)
            except RegionError:
                row.append(PayoffCell(alpha, beta, None, None, False))
                continue
            row.append(PayoffCell(alpha, beta, u_acc, coverage(table, tri), True))
        grid.append(row)
    return grid


def find_pure_nash(grid) -> tuple | None:
    """Pure-strategy Nash equilibrium of a 3x3 grid, or None.

    A valid cell qualifies when its accuracy payoff is maximal within its
    column and its coverage payoff maximal within its row, deviations
    ranging over valid cells only. Multiple equilibria resolve by largest
    payoff sum, then largest coverage, then smallest (i, j).
    Raises :class:`GameError` when no cell is valid.
    """
    valid = [(i, j) for i in range(3) for j in range(3) if grid[i][j].valid]
    if not valid:
        raise GameError("all payoff cells are invalid")
    col_best = {}
    row_best = {}
    for i, j in valid:
        cell = grid[i][j]
        if j not in col_best or cell.u_acc > col_best[j]:
            col_best[j] = cell.u_acc
        if i not in row_best or cell.u_cov > row_best[i]:
            row_best[i] = cell.u_cov
    equilibria = [
        (i, j) for i, j in valid
        if grid[i][j].u_acc == col_best[j] and grid[i][j].u_cov == row_best[i]
    ]
    if not equilibria:
        return None
    return min(
        equilibria,
        key=lambda ij: (
            -(grid[ij[0]][ij[1]].u_acc + grid[ij[0]][ij[1]].u_cov),
            -grid[ij[0]][ij[1]].u_cov,
            ij,
        ),
    )


def run_repetition(table: EquivalenceClassTable,
                   cfg: GameConfig) -> tuple:
    """Iterate the game until a stopping criterion fires.

    Returns (final thresholds, trace). A rejected trade (the improving
    player's gain does not exceed the other's loss) keeps the round's
    initial thresholds, as does stopping for range exhaustion.
    """
    rounds = []
    current = cfg.initial

    def record(grid, eq, adopted, result, reason=None):
        payoffs = None
        if eq is not None:
            cell = grid[eq[0]][eq[1]]
            payoffs = (cell.u_acc, cell.u_cov)
        rounds.append(GameRound(
            initial=current, grid=tuple(tuple(r) for r in grid),
            equilibrium=eq, adopted=adopted, result=result, payoffs=payoffs,
        ))
        return reason

    for _ in range(cfg.max_rounds):
        grid = build_payoff_table(table, current, cfg)
        movable = any(
            grid[i][j].valid for i in range(3) for j in range(3) if (i, j) != (0, 0)
        )
        if not movable:
            reason = record(grid, None, False, current, StopReason.RANGE_EXHAUSTED)
            break
        eq = find_pure_nash(grid)
        if eq is None or eq == (0, 0):
            reason = record(grid, eq, False, current,
                            StopReason.NO_EQUILIBRIUM_CHANGE)
            break
        cell = grid[eq[0]][eq[1]]
        base = grid[0][0]
        if base.valid:
            d_acc = cell.u_acc - base.u_acc
            d_cov = cell.u_cov - base.u_cov
            gain = max(d_acc, d_cov)
            loss = -min(d_acc, d_cov)
            if gain <= loss:
                reason = record(grid, eq, False, current,
                                StopReason.PAYOFF_TRADEOFF)
                break
        adopted = cell.thresholds
        record(grid, eq, True, adopted)
        current = adopted
    else:
        reason = StopReason.MAX_ROUNDS

    return current, GameTrace(rounds=tuple(rounds), stop_reason=reason)


# ---------------------------------------------------------------------------
# trace rendering


def _payoff_str(x: Fraction | None) -> str:
    return "-" if x is None else f"{float(x):.4f}"


def trace_to_json(trace: GameTrace) -> dict:
    """JSON form of a trace: per-round payoff tables and outcomes."""
    rounds = []
    for r in trace.rounds:
        grid = [
            [
                {
                    "alpha": fraction_str(cell.alpha),
                    "beta": fraction_str(cell.beta),
                    "u_acc": None if cell.u_acc is None else float(cell.u_acc),
                    "u_cov": None if cell.u_cov is None else float(cell.u_cov),
                    "valid": cell.valid,
                }
                for cell in row
            ]
            for row in r.grid
        ]
        rounds.append({
            "initial": {"alpha": fraction_str(r.initial.alpha),
                        "beta": fraction_str(r.initial.beta)},
            "payoff_table": grid,
            "equilibrium": None if r.equilibrium is None else list(r.equilibrium),
            "adopted": r.adopted,
            "result": {"alpha": fraction_str(r.result.alpha),
                       "beta": fraction_str(r.result.beta)},
            "payoffs": None if r.payoffs is None else
                       [float(r.payoffs[0]), float(r.payoffs[1])],
        })
    return {"rounds": rounds, "stop_reason": trace.stop_reason.value}


def render_payoff_table(grid, cfg: GameConfig) -> str:
    """Aligned text table of one round's payoffs."""
    bs, as_ = fraction_str(cfg.beta_step), fraction_str(cfg.alpha_step)
    col_heads = ["alpha", f"alpha-{as_}", f"alpha-2*{as_}"]
    row_heads = ["beta", f"beta+{bs}", f"beta+2*{bs}"]
    cells = [
        [
            f"<{_payoff_str(cell.u_acc)},{_payoff_str(cell.u_cov)}>"
            if cell.valid else "<invalid>"
            for cell in row
        ]
        for row in grid
    ]
    widths = [
        max(len(col_heads[j]), max(len(cells[i][j]) for i in range(3)))
        for j in range(3)
    ]
    head_w = max(len(h) for h in row_heads)
    lines = [
        " " * head_w + "  " +
        "  ".join(col_heads[j].rjust(widths[j]) for j in range(3))
    ]
    for i in range(3):
        lines.append(
            row_heads[i].ljust(head_w) + "  " +
            "  ".join(cells[i][j].rjust(widths[j]) for j in range(3))
        )
    return "\n".join(lines)


def render_trace_text(trace: GameTrace, cfg: GameConfig) -> str:
    """Aligned text rendering of the whole repetition trace."""
    parts = []
    for n, r in enumerate(trace.rounds, start=1):
        parts.append(f"round {n}: initial {r.initial}")
        parts.append(render_payoff_table(r.grid, cfg))
        if r.equilibrium is None:
            parts.append("  equilibrium: none")
        else:
            pay = f"<{_payoff_str(r.payoffs[0])},{_payoff_str(r.payoffs[1])}>"
            verdict = "adopted" if r.adopted else "rejected"
            parts.append(
                f"  equilibrium at {r.equilibrium}, payoffs {pay}, {verdict} "
                f"-> {r.result}"
            )
        parts.append("")
    parts.append(f"stop reason: {trace.stop_reason.value}")
    parts.append(f"final thresholds: {trace.final}")
    return "\n".join(parts)
