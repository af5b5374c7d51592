from enum import Enum
from typing import Dict, Any, Optional, List
from dataclasses import dataclass, field
import uuid
from datetime import datetime

from wildram.dynamics.ramification import RamificationProfile

REPORT_SCHEMA = 1


class SampleCheckStatus(Enum):
    """標本1件の検査状態"""
    PENDING = "pending"
    IN_PROGRESS = "in_progress"
    PASSED = "passed"
    FAILED = "failed"


class SuiteRunStatus(Enum):
    """スイート実行全体の状態"""
    PENDING = "pending"
    IN_PROGRESS = "in_progress"
    PASSED = "passed"
    FAILED = "failed"


@dataclass
class CheckOutcome:
    """検査関数の戻り値（profiles は全体で Sen の合同式などを確認する）"""
    passed: bool
    observed: Any = None
    expected: Any = None
    spec: Optional[Dict[str, Any]] = None
    profiles: List[RamificationProfile] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)


@dataclass
class SampleCheck:
    """標本1件分の検査"""
    index: int
    case: Dict[str, Any] = field(default_factory=dict)
    status: SampleCheckStatus = SampleCheckStatus.PENDING
    spec: Optional[Dict[str, Any]] = None
    observed: Any = None
    expected: Any = None
    error: Optional[str] = None
    rows: List[List[Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'case': self.case,
            'status': self.status.value,
            'spec': self.spec,
            'observed': self.observed,
            'expected': self.expected,
            'error': self.error,
        }


@dataclass
class SuiteRun:
    """スイートの実行全体"""
    suite: str
    seed: int
    params: Dict[str, Any]
    checks: List[SampleCheck] = field(default_factory=list)
    status: SuiteRunStatus = SuiteRunStatus.PENDING
    run_id: str = None
    created_at: str = None
    wall_time: Optional[float] = None

    def __post_init__(self):
        if self.run_id is None:
            self.run_id = str(uuid.uuid4())
        if self.created_at is None:
            self.created_at = datetime.now().isoformat()

    @property
    def passed_count(self) -> int:
        return sum(1 for check in self.checks if check.status == SampleCheckStatus.PASSED)

    @property
    def failed_count(self) -> int:
        return sum(1 for check in self.checks if check.status == SampleCheckStatus.FAILED)

    def first_counterexample(self) -> Optional[SampleCheck]:
        """標本番号が最小の失敗"""
        return next((check for check in self.checks if check.status == SampleCheckStatus.FAILED), None)

    def rows(self) -> List[List[Any]]:
        return [row for check in self.checks for row in check.rows]

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """
        レポート形式に変換する
        run_id と created_at は台帳にだけ残し、レポートはバイト単位で再現可能にする
        """
        counterexample = self.first_counterexample()
        report = {
            'schema': REPORT_SCHEMA,
            'suite': self.suite,
            'seed': self.seed,
            'params': self.params,
            'samples': len(self.checks),
            'passed': self.passed_count,
            'failed': self.failed_count,
            'status': self.status.value,
            'first_counterexample': counterexample.to_dict() if counterexample else None,
        }
        if include_timing and self.wall_time is not None:
            report['wall_time'] = round(self.wall_time, 3)
        return report
