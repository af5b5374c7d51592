#!/usr/bin/env python3
"""
検証スイートのテストスクリプト
各スイートを小さな標本数で実行し、台帳と再現性を確認する

    python test_suites.py [seed]
"""
import sys
from typing import Any, Dict

import pytest

from wildram.errors import ParseError, PreconditionViolation, UnknownSuite
from wildram.ledger import RunLedger
from wildram.suites.catalog import PROFILE_SUITES, SUITES, get_suite, resolve_params
from wildram.suites.sampling import SplitMix64
from wildram.suites.suite_models import SampleCheck, SampleCheckStatus, SuiteRun
from wildram.suites.suite_runner import SuiteRunner

# スイートごとの小さなパラメータ
SMALL_PARAMS: Dict[str, Dict[str, Any]] = {
    'conj-invariance': {'samples': 6, 'q_max': 8},
    'iter-residue': {'samples': 4, 'q_max': 6},
    'closed-formula': {'samples': 2, 'q_max': 10},
    'criterion1': {'samples': 4, 'q': [4, 5], 'n_max': 1},
    'criterion2': {'samples': 1, 'q': [7], 'n_max': 1},
    'q-ramified': {'samples': 4, 'q': [4, 5], 'n_max': 1},
    'sen-lower-bound': {'samples': 4, 'q_max': 6, 'n_max': 1},
    'main-lemma': {'cases': [[3, 4, 1]]},
    'delta-short': {'cases': [[3, 4, 1], [3, 4, 4]]},
    'powersarezero': {'samples': 3, 'd': [3]},
    'newton-bounds': {'samples': 4},
}


class SuiteTester:
    """検証スイートのテスター"""

    def __init__(self, seed: int = 7):
        self.seed = seed
        self.test_results = []

    def log_test(self, test_name: str, success: bool, message: str = "", details: Any = None):
        """テスト結果をログ出力"""
        status = "✅ PASS" if success else "❌ FAIL"
        print(f"{status} {test_name}")
        if message:
            print(f"    {message}")
        if details and not success:
            print(f"    詳細: {details}")
        self.test_results.append({
            'test_name': test_name,
            'success': success,
            'message': message,
            'details': details,
        })

    def test_suite(self, name: str) -> bool:
        """スイートを小さな標本数で実行し、全標本が通ることを確認"""
        store = RunLedger()
        run = SuiteRunner(store=store).run_suite(name, self.seed, SMALL_PARAMS[name])
        counterexample = run.first_counterexample()
        success = run.failed_count == 0 and run.passed_count == len(run.checks) > 0
        self.log_test(f"スイート {name}", success,
                      f"{run.passed_count}/{len(run.checks)} 件成功",
                      counterexample.to_dict() if counterexample else None)
        return success

    def test_worker_independence(self) -> bool:
        """ワーカー数を変えてもレポートが変わらない"""
        reports = [
            SuiteRunner(workers=workers, store=RunLedger())
            .run_suite('closed-formula', self.seed, SMALL_PARAMS['closed-formula']).to_dict()
            for workers in (1, 4)
        ]
        success = reports[0] == reports[1]
        self.log_test("ワーカー数に依存しない", success, details=reports)
        return success

    def test_ledger_records(self) -> bool:
        """台帳に実行と標本の結果が標本番号順に残る"""
        store = RunLedger()
        run = SuiteRunner(workers=3, store=store).run_suite('iter-residue', self.seed, SMALL_PARAMS['iter-residue'])
        stored = store.get_run(run.run_id)
        indices = [check['index'] for check in stored['checks']]
        status = store.get_ledger_status()
        success = (
            stored['status'] == run.status.value
            and indices == list(range(len(run.checks)))
            and status['runs_count'] == 1
            and status['checks_count'] == len(run.checks)
            and status['passed_count'] == run.passed_count
        )
        self.log_test("台帳の記録", success, f"runs={status['runs_count']}, checks={status['checks_count']}",
                      {'stored': stored, 'status': status})
        return success

    def run_all_tests(self) -> bool:
        """全テストを実行"""
        print("🚀 検証スイートのテストを開始します")
        print(f"seed: {self.seed}")
        print()

        all_passed = True
        for name in sorted(SUITES):
            all_passed = self.test_suite(name) and all_passed
        all_passed = self.test_worker_independence() and all_passed
        all_passed = self.test_ledger_records() and all_passed
        print()
        return all_passed

    def print_summary(self):
        """テスト結果サマリーを出力"""
        print("=" * 60)
        print("📊 テスト結果サマリー")
        print("=" * 60)

        passed = sum(1 for result in self.test_results if result['success'])
        total = len(self.test_results)

        print(f"総テスト数: {total}")
        print(f"成功: {passed}")
        print(f"失敗: {total - passed}")
        print(f"成功率: {(passed / total) * 100:.1f}%" if total > 0 else "N/A")

        if total - passed > 0:
            print("\n❌ 失敗したテスト:")
            for result in self.test_results:
                if not result['success']:
                    print(f"  - {result['test_name']}: {result['message']}")

        print("\n" + "=" * 60)


# --- pytest から実行する分 ---

@pytest.mark.parametrize("name", sorted(SMALL_PARAMS))
def test_small_suite(name):
    assert SuiteTester().test_suite(name)


def test_every_suite_has_small_params():
    assert set(SMALL_PARAMS) == set(SUITES)
    assert PROFILE_SUITES <= set(SUITES)


def test_worker_independence():
    assert SuiteTester(seed=3).test_worker_independence()


def test_ledger_records():
    assert SuiteTester().test_ledger_records()


def test_iter_residue_at_default_size():
    run = SuiteRunner(workers=4).run_suite('iter-residue', 7)
    assert run.passed_count == 200, run.first_counterexample()
    for check in run.checks:
        p = check.spec['f']['p']
        q = check.spec['f']['coeffs'][0][0] - 1
        assert q >= p + 1 and q % p


def _default_cases(name):
    definition = get_suite(name)
    return definition.cases(resolve_params(definition, {}))


def test_default_sample_counts():
    closed = _default_cases('closed-formula')
    assert [sum(1 for case in closed if case['p'] == p) for p in (3, 5, 7)] == [500, 500, 500]
    # 偶数番は pind_1 ≠ 0、奇数番は β = 0 の正規形
    criterion1 = _default_cases('criterion1')
    assert sum(1 for case in criterion1 if case['sample'] % 2 == 0) == 100
    assert sum(1 for case in criterion1 if case['sample'] % 2) == 100
    criterion2 = _default_cases('criterion2')
    combos = {(7, 1), (7, 2), (8, 1), (8, 2), (10, 1), (10, 2), (10, 3)}
    for beta_zero in (False, True):
        assert {(case['q'], case['j']) for case in criterion2 if case['beta_zero'] is beta_zero} == combos
    assert len(_default_cases('conj-invariance')) == 1000
    assert len(_default_cases('iter-residue')) == 200
    assert len(_default_cases('powersarezero')) == 50
    assert len(_default_cases('newton-bounds')) == 100
    triples = _default_cases('main-lemma')
    assert [(c['p'], c['q'], c['ell']) for c in triples] == [(3, 4, 1), (3, 5, 2), (3, 7, 1), (5, 7, 2), (5, 11, 1)]
    short = _default_cases('delta-short')
    assert len(short) >= 5
    assert any(c['ell'] < c['q'] for c in short) and any(c['ell'] == c['q'] for c in short)


def test_each_runner_keeps_its_own_ledger():
    first, second = SuiteRunner(), SuiteRunner()
    assert first.store is not second.store
    first.run_suite('powersarezero', 1, SMALL_PARAMS['powersarezero'])
    assert first.store.get_ledger_status()['runs_count'] == 1
    assert second.store.get_ledger_status()['runs_count'] == 0


def test_profile_rows():
    run = SuiteRunner(store=RunLedger()).run_suite('q-ramified', 1, SMALL_PARAMS['q-ramified'])
    rows = run.rows()
    assert len(rows) == 4
    # (q, ℓ_j, i_0, i_1)
    assert all(len(row) == 4 and row[0] == row[1] for row in rows)
    assert all(row[2] == str(row[0]) for row in rows)


def test_splitmix64():
    # 参照実装の seed 0 の最初の出力
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF
    first = [SplitMix64.for_sample(9, i).next_u64() for i in range(4)]
    again = [SplitMix64.for_sample(9, i).next_u64() for i in range(4)]
    assert first == again
    assert len(set(first)) == 4
    rng = SplitMix64(1)
    assert all(2 <= rng.between(2, 5) <= 5 for _ in range(50))
    with pytest.raises(PreconditionViolation):
        rng.below(0)


def test_resolve_params():
    definition = get_suite('closed-formula')
    params = resolve_params(definition, {'samples': 3})
    assert params['samples'] == 3
    assert params['primes'] == [3, 5, 7]
    with pytest.raises(ParseError):
        resolve_params(definition, {'colour': 'red'})
    with pytest.raises(ParseError):
        resolve_params(definition, {'samples': -1})


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        get_suite('no-such-suite')
    with pytest.raises(UnknownSuite):
        SuiteRunner(store=RunLedger()).run_suite('no-such-suite', 1)
    with pytest.raises(PreconditionViolation):
        SuiteRunner(workers=0)


def test_first_counterexample_is_smallest_index():
    run = SuiteRun(suite='closed-formula', seed=1, params={}, checks=[
        SampleCheck(index=0, status=SampleCheckStatus.PASSED),
        SampleCheck(index=1, status=SampleCheckStatus.FAILED, error="a"),
        SampleCheck(index=2, status=SampleCheckStatus.FAILED, error="b"),
    ])
    assert run.first_counterexample().index == 1
    report = run.to_dict()
    assert (report['passed'], report['failed']) == (1, 2)
    assert report['first_counterexample']['error'] == "a"
    assert 'run_id' not in report and 'wall_time' not in report
    run.wall_time = 1.23456
    assert run.to_dict(include_timing=True)['wall_time'] == 1.235


def main():
    """メイン実行関数"""
    print("wildram - 検証スイートのテストスクリプト")
    print("=" * 60)

    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    tester = SuiteTester(seed)

    all_passed = tester.run_all_tests()
    tester.print_summary()

    if all_passed:
        print("🎉 全てのテストが成功しました！")
    else:
        print("⚠️  一部のテストが失敗しました。上記の詳細を確認してください。")

    sys.exit(0 if all_passed else 1)


if __name__ == "__main__":
    main()
