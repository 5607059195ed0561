"""
합성 코퍼스로 분할 → 학습 → 평가 → 베이스라인 비교까지 실행하는 스크립트
"""

import io
import logging
import sys

# Windows 콘솔 인코딩 문제 해결
if sys.platform == 'win32':
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', errors='replace')

from assigner import format_assignment
from corpus import load_corpus
from errors import IndexerError
from indexing_agent import IndexingAgent
from model_store import build_run_config
from synthetic_corpus import separable_corpus, write_synthetic


def run_demo(output_dir: str = "./indexer_demo") -> int:
    print("=" * 60)
    print("디스크립터 자동 할당 데모 (합성 코퍼스)")
    print("=" * 60)

    config = build_run_config({"paths": {"output_dir": output_dir}})
    agent = IndexingAgent(config)

    try:
        # 1. 합성 코퍼스 생성
        print("\n[1/5] 합성 코퍼스 생성...")
        synthetic = separable_corpus()
        thesaurus_path, corpus_path = write_synthetic(synthetic, agent.output_dir)
        agent.load_thesaurus(thesaurus_path)
        print(f"[OK] 디스크립터 {len(synthetic.thesaurus)}개, 문서 {len(synthetic.corpus)}개")

        # 2. 분할
        print("\n[2/5] train/test 분할...")
        train_path, test_path = agent.split(load_corpus(corpus_path))
        train_part, test_part = load_corpus(train_path), load_corpus(test_path)

        # 3. 학습
        print("\n[3/5] associate 리스트 학습...")
        summary = agent.train(train_part, progress=True)
        print(f"[OK] {len(summary.trained)}개 디스크립터 학습 완료")
        first = summary.trained[0]
        print(agent.show_associates(first, top_n=10))

        # 4. 평가
        print("\n[4/5] 테스트 코퍼스 평가...")
        report = agent.evaluate(test_part)
        print(report.format_table())

        sample = agent.assign_documents(test_part)[0]
        print(f"\n[{sample.document_id}]")
        print(format_assignment(sample, agent.labels()))

        # 5. 키워드 추출 베이스라인
        print("\n[5/5] 라벨 일치 추출 베이스라인...")
        _, baseline_report = agent.extract_baseline(test_part)
        print(baseline_report.format_table())

    except IndexerError as e:
        print(f"[ERROR] {type(e).__name__}: {e}")
        return 1

    print("\n[완료] 결과 폴더:", agent.output_dir)
    return 0


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(message)s')
    sys.exit(run_demo())
