"""Synchronous message-passing twin of the centralized query driver.

Every node is an independent actor holding only its own charge and its
out-edge list. A round has two phases: all transmitting nodes emit one
message per out-edge (phase 1), then every node folds its inbox into its
charge in ascending sender-id order (phase 2, behind a barrier). An
omniscient coordinator applies the same stop predicate as the centralized
engine before each round, so iteration counts and every float in the final
charge vector match :func:`chargediff.engine.run_query` exactly, not just
approximately.

Real distributed termination detection is out of scope; the coordinator
stands in for it so that message accounting stays faithful.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diffusion import DiffusionConfig, Variant, emitters, excess_of, retained_after_send, send_total
from .engine import Bounds, QueryResult, build_result, should_stop, validate_config
from .graph import Graph


@dataclass
class NodeActor:
    """One node's local state: charge, out-edges, and a mailbox."""

    id: int
    charge: float
    targets: tuple[int, ...]
    ratios: tuple[float, ...]
    inbox: list[tuple[int, float]] = field(default_factory=list)

    def emit(self, cfg: DiffusionConfig) -> list[tuple[int, tuple[int, float]]]:
        """Messages (target, (sender, amount)) for this round, one per out-edge."""
        total = send_total(self.charge, cfg)
        return [
            (self.targets[k], (self.id, total * self.ratios[k]))
            for k in range(len(self.targets))
        ]

    def fold_inbox(self, emitted: bool, cfg: DiffusionConfig) -> None:
        """Apply retention, then receipts sorted by sender id."""
        acc = retained_after_send(self.charge, emitted, cfg)
        for _, amount in sorted(self.inbox):
            acc += amount
        self.charge = acc
        self.inbox.clear()


@dataclass(frozen=True)
class RoundStats:
    """Accounting for one synchronous round."""

    round_index: int
    messages_sent: int
    active_count: int
    total_charge: float


@dataclass
class MessageReport:
    """Totals from a run compared against the closed-form bounds."""

    total_messages: int
    rounds: int
    peak_round_messages: int
    message_bound: float | None
    messages_within_bound: bool | None
    touched: int | None
    max_touched: int
    touched_within_bound: bool | None
    violations: list[str]


def run_distributed(
    g: Graph, seed: int, cfg: DiffusionConfig
) -> tuple[QueryResult, list[RoundStats]]:
    """Simulate the diffusion as lockstep rounds of per-node actors.

    Returns the query result (identical to the centralized run, float for
    float) and per-round message statistics. A round that would emit zero
    messages is never run or recorded.
    """
    validate_config(g, cfg)
    if not 0 <= seed < g.node_count:
        raise ValueError(f"seed {seed} out of range for graph with {g.node_count} nodes")

    actors = [
        NodeActor(
            id=i,
            charge=0.0,
            targets=tuple(j for j, _ in g.adjacency[i]),
            ratios=g.out_ratios[i],
        )
        for i in range(g.node_count)
    ]
    actors[seed].charge = 1.0
    ever_active: set[int] = {seed}
    stats: list[RoundStats] = []
    trace = None
    if cfg.variant is Variant.EXCESS:
        trace = [excess_of({seed: 1.0}, cfg.epsilon)]

    terminated = False
    rounds = 0
    while True:
        charges = {a.id: a.charge for a in actors if a.charge != 0.0}
        if should_stop(charges, g, cfg):
            terminated = True
            break
        if rounds >= cfg.max_iterations:
            break

        # Phase 1: emissions, all computed from the round-start state.
        sending = emitters(charges, g, cfg)
        sending_set = set(sending)
        messages = 0
        in_flight = 0.0
        for j in sending:
            for target, message in actors[j].emit(cfg):
                actors[target].inbox.append(message)
                in_flight += message[1]
                messages += 1

        if cfg.variant is Variant.LAZY_WALK:
            active_count = g.node_count
        else:
            active_count = sum(1 for xi in charges.values() if xi > cfg.epsilon)

        held = sum(
            retained_after_send(a.charge, a.id in sending_set, cfg) for a in actors
        )
        if abs(held + in_flight - 1.0) > 1e-9:
            raise RuntimeError(
                f"charge leak at round {rounds + 1}: held={held!r} in_flight={in_flight!r}"
            )

        # Phase 2: barrier, then order-fixed inbox folds.
        ever_active.update(i for i, xi in charges.items() if xi > cfg.epsilon)
        for a in actors:
            a.fold_inbox(a.id in sending_set, cfg)
        rounds += 1
        ever_active.update(a.id for a in actors if a.charge > cfg.epsilon)
        if trace is not None:
            trace.append(
                excess_of({a.id: a.charge for a in actors if a.charge != 0.0}, cfg.epsilon)
            )
        stats.append(
            RoundStats(
                round_index=rounds,
                messages_sent=messages,
                active_count=active_count,
                total_charge=sum(a.charge for a in actors),
            )
        )

    final = {a.id: a.charge for a in actors if a.charge != 0.0}
    result = build_result(final, ever_active, seed, rounds, terminated, trace)
    return result, stats


def round_stats_table(stats: list[RoundStats]) -> str:
    """Tab-separated table of per-round stats, header included."""
    lines = ["round\tmessages\tactive\ttotal_charge"]
    for row in stats:
        lines.append(
            f"{row.round_index}\t{row.messages_sent}\t{row.active_count}\t{row.total_charge!r}"
        )
    return "\n".join(lines) + "\n"


def message_complexity_report(
    stats: list[RoundStats],
    bounds: Bounds,
    d_max: int | None = None,
    touched: int | None = None,
) -> MessageReport:
    """Total up a run's messages and compare against the computed bounds.

    The per-round message bound is rounds * d_max * max_core_size (at most
    max_core_size transmitters per round, each with at most d_max out-edges);
    it needs the graph's d_max to evaluate. ``touched`` enables the
    touched-node comparison when the caller has the query result.
    """
    total = sum(s.messages_sent for s in stats)
    peak = max((s.messages_sent for s in stats), default=0)
    violations: list[str] = []

    message_bound = None
    messages_ok = None
    if d_max is not None:
        message_bound = len(stats) * d_max * bounds.max_core_size
        messages_ok = total <= message_bound
        if not messages_ok:
            violations.append(
                f"messages {total} exceed rounds*d_max*max_core_size = {message_bound}"
            )

    touched_ok = None
    if touched is not None:
        touched_ok = touched <= bounds.max_touched
        if not touched_ok:
            violations.append(f"touched {touched} exceeds max_touched {bounds.max_touched}")

    return MessageReport(
        total_messages=total,
        rounds=len(stats),
        peak_round_messages=peak,
        message_bound=message_bound,
        messages_within_bound=messages_ok,
        touched=touched,
        max_touched=bounds.max_touched,
        touched_within_bound=touched_ok,
        violations=violations,
    )
