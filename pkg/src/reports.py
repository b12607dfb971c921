"""
Reports Module
Check reports and tabular rendering of rank tables and check summaries
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List

import pandas as pd

logger = logging.getLogger(__name__)

# Violations kept in a report; the count is always exact
MAX_LISTED_VIOLATIONS = 50


@dataclass
class CheckReport:
    """
    Outcome of an exhaustive check.

    ``checked`` counts the tuples or entries examined; a check passes when
    no violation was recorded.
    """

    name: str
    checked: int = 0
    violation_count: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def record(self, **info):
        self.violation_count += 1
        if len(self.violations) < MAX_LISTED_VIOLATIONS:
            self.violations.append(info)

    def absorb(self, other: 'CheckReport') -> 'CheckReport':
        self.checked += other.checked
        self.violation_count += other.violation_count
        room = MAX_LISTED_VIOLATIONS - len(self.violations)
        self.violations.extend(other.violations[:max(room, 0)])
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            'check': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'violation_count': self.violation_count,
            'violations': self.violations,
            'details': self.details,
        }

    def __repr__(self):
        status = 'passed' if self.passed else f'{self.violation_count} violations'
        return f"CheckReport({self.name!r}, checked={self.checked}, {status})"


def rank_table_frame(rt) -> pd.DataFrame:
    """
    Rank table as a grid: rows r (descending), columns s (ascending).

    Args:
        rt: RankTable-like object with a ``ranks`` mapping {(r, s): rank}

    Returns:
        pd.DataFrame: zero-filled grid
    """
    if not rt.ranks:
        return pd.DataFrame()
    rs = sorted({r for r, _ in rt.ranks}, reverse=True)
    ss = sorted({s for _, s in rt.ranks})
    frame = pd.DataFrame(0, index=pd.Index(rs, name='r'), columns=pd.Index(ss, name='s'))
    for (r, s), value in rt.ranks.items():
        frame.loc[r, s] = value
    return frame


def render_rank_table(rt) -> str:
    frame = rank_table_frame(rt)
    if frame.empty:
        return f"(zero {rt.mode} rank table)"
    return f"mode: {rt.mode}\n{frame.to_string()}"


def checks_frame(reports: Iterable[CheckReport]) -> pd.DataFrame:
    rows = [
        {'check': r.name, 'passed': r.passed, 'checked': r.checked, 'violations': r.violation_count}
        for r in reports
    ]
    return pd.DataFrame(rows, columns=['check', 'passed', 'checked', 'violations'])


def render_checks(reports: Iterable[CheckReport]) -> str:
    frame = checks_frame(reports)
    return frame.to_string(index=False) if not frame.empty else "(no checks)"


def comparison_frame(rows: List[Dict[str, Any]]) -> pd.DataFrame:
    """Flatten per-diagram comparison records (one dict per row) for display."""
    if not rows:
        return pd.DataFrame()
    return pd.json_normalize(rows)
