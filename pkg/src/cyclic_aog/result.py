from dataclasses import dataclass, field
from enum import Enum

from .costs import format_cost


class Status(Enum):
    SUCCESS = "SUCCESS"
    FAILURE = "FAILURE"

    def __str__(self):
        return self.value


class BudgetExhausted(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


@dataclass
class SearchResult:
    status: Status
    cost: object
    reason: str = ""            # NoSolution | StartTypeIII | "" on success
    closed_trace: list = field(default_factory=list)      # [(node, h)]
    selections: int = 0
    evaluations: int = 0
    iterations: int = 0
    expansion_trace: list = field(default_factory=list)
    front_trace: list = field(default_factory=list)       # front(s) after each iteration
    selection_trace: list = field(default_factory=list)   # REV* only
    log: list = field(default_factory=list)               # per-iteration rows for trace files
    front: object = None
    explicit: object = None     # S2: the grown graph
    scale: int = 1

    @property
    def ok(self):
        return self.status is Status.SUCCESS

    @property
    def expansions(self):
        return len(self.expansion_trace)

    @property
    def closed_order(self):
        return [n for n, _ in self.closed_trace]

    def summary(self):
        return f"{self.status},{format_cost(self.cost, self.scale)}"
