import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Optional

from wildram.errors import PreconditionViolation, WildramError
from wildram.ledger import RunLedger
from wildram.suites.catalog import SuiteDefinition, get_suite, resolve_params
from wildram.suites.sampling import SplitMix64
from wildram.suites.suite_models import SampleCheck, SampleCheckStatus, SuiteRun, SuiteRunStatus

logger = logging.getLogger(__name__)


class SuiteRunner:
    """
    スイートランナー
    標本をワーカースレッドに配って検査し、標本番号の順に結果をまとめる
    """

    def __init__(self, workers: int = 1, store: Optional[RunLedger] = None):
        if workers < 1:
            raise PreconditionViolation(f"workers must be >= 1, got {workers}")
        self.workers = workers
        self.store = store if store is not None else RunLedger()

    def run_suite(self, name: str, seed: int, params: Optional[Dict[str, Any]] = None) -> SuiteRun:
        """
        スイートを実行する
        結果は (name, seed, params) だけで決まる
        """
        definition = get_suite(name)
        resolved = resolve_params(definition, params or {})
        cases = definition.cases(resolved)
        run = SuiteRun(suite=name, seed=seed, params=resolved,
                       checks=[SampleCheck(index=i, case=case) for i, case in enumerate(cases)])
        logger.info(f"Starting suite execution: {name} (seed={seed}, samples={len(cases)})")

        self.store.create_run({
            'run_id': run.run_id,
            'suite': name,
            'seed': seed,
            'params': resolved,
            'status': run.status.value,
            'created_at': run.created_at,
        })
        run.status = SuiteRunStatus.IN_PROGRESS
        self.store.update_run(run.run_id, {'status': run.status.value})

        started = time.perf_counter()
        if self.workers == 1:
            for check in run.checks:
                self._execute_check(definition, check, run)
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                list(pool.map(lambda check: self._execute_check(definition, check, run), run.checks))
        run.wall_time = time.perf_counter() - started

        run.status = SuiteRunStatus.FAILED if run.failed_count else SuiteRunStatus.PASSED
        self.store.update_run(run.run_id, {
            'status': run.status.value,
            'passed': run.passed_count,
            'failed': run.failed_count,
        })
        logger.info(f"Suite completed: {run.passed_count} passed, {run.failed_count} failed "
                    f"({run.wall_time:.2f}s)")
        return run

    def _execute_check(self, definition: SuiteDefinition, check: SampleCheck, run: SuiteRun) -> None:
        """
        標本1件を検査する
        例外は標本の失敗として記録し、実行は続ける
        """
        check.status = SampleCheckStatus.IN_PROGRESS
        rng = SplitMix64.for_sample(run.seed, check.index)
        try:
            outcome = definition.check(check.case, rng, run.params)
            check.spec = outcome.spec
            check.observed = outcome.observed
            check.expected = outcome.expected
            check.rows = outcome.rows
            violations = [v for profile in outcome.profiles for v in profile.violations()]
            if violations:
                check.status = SampleCheckStatus.FAILED
                check.error = "; ".join(violations)
                logger.error(f"Sample {check.index} violates profile constraints: {check.error}")
            elif outcome.passed:
                check.status = SampleCheckStatus.PASSED
                logger.debug(f"Sample {check.index} passed")
            else:
                check.status = SampleCheckStatus.FAILED
                logger.error(f"Sample {check.index} failed: observed {check.observed}, expected {check.expected}")
        except WildramError as e:
            check.status = SampleCheckStatus.FAILED
            check.error = f"{type(e).__name__}: {e}"
            logger.error(f"Sample {check.index} failed: {check.error}")
        except Exception as e:
            check.status = SampleCheckStatus.FAILED
            check.error = f"unexpected {type(e).__name__}: {e}"
            logger.error(f"Unexpected error in sample {check.index}: {e}")
        self.store.record_check(run.run_id, check.to_dict())


def run_suite(name: str, seed: int, params: Optional[Dict[str, Any]] = None, workers: int = 1) -> SuiteRun:
    return SuiteRunner(workers=workers).run_suite(name, seed, params)
