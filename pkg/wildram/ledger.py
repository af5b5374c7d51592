from datetime import datetime
from typing import Any, Dict, Optional
import threading


class RunLedger:
    """
    スイート実行と標本ごとの結果を保持するメモリ上の台帳（ランナーごとに1つ）
    ワーカースレッドから同時に書き込まれるのでロックで守る
    """

    def __init__(self):
        self.lock = threading.Lock()
        self.runs = {}
        self.checks = {}

    def create_run(self, run_data: Dict[str, Any]) -> str:
        with self.lock:
            run_id = run_data['run_id']
            self.runs[run_id] = {
                'run_id': run_id,
                'suite': run_data.get('suite'),
                'seed': run_data.get('seed'),
                'params': run_data.get('params', {}),
                'status': run_data.get('status', 'pending'),
                'created_at': run_data.get('created_at', datetime.now().isoformat()),
                'updated_at': datetime.now().isoformat(),
            }
            self.checks[run_id] = {}
            return run_id

    def update_run(self, run_id: str, updates: Dict[str, Any]) -> bool:
        with self.lock:
            if run_id in self.runs:
                self.runs[run_id].update(updates)
                self.runs[run_id]['updated_at'] = datetime.now().isoformat()
                return True
            return False

    def record_check(self, run_id: str, check: Dict[str, Any]) -> bool:
        with self.lock:
            if run_id not in self.checks:
                return False
            self.checks[run_id][check['index']] = check
            return True

    def get_run(self, run_id: str) -> Optional[Dict[str, Any]]:
        with self.lock:
            run = self.runs.get(run_id)
            if run is None:
                return None
            checks = self.checks.get(run_id, {})
            return {**run, 'checks': [checks[i] for i in sorted(checks)]}

    def get_ledger_status(self) -> Dict[str, Any]:
        with self.lock:
            outcomes = [c['status'] for checks in self.checks.values() for c in checks.values()]
            return {
                'runs_count': len(self.runs),
                'checks_count': len(outcomes),
                'passed_count': outcomes.count('passed'),
                'failed_count': outcomes.count('failed'),
            }

