"""
디스크립터 색인 CLI 인터페이스
커맨드라인에서 분할 / 학습 / 할당 / 평가 / 베이스라인 추출 / 비교 실험을 수행
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from assigner import format_assignment
from baseline import BaselineOptions
from errors import ConfigError, IndexerError
from evaluator import DEFAULT_RANKS
from indexing_agent import IndexingAgent
from model_store import load_run_config
from preprocess import STOPWORD_KINDS, load_stopwords

logger = logging.getLogger(__name__)


def _ranks(value: str) -> Tuple[int, ...]:
    try:
        ranks = tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"rank 목록은 쉼표로 구분한 정수여야 합니다: {value}") from None
    if not ranks or any(k < 1 for k in ranks):
        raise argparse.ArgumentTypeError(f"rank는 1 이상이어야 합니다: {value}")
    return tuple(sorted(set(ranks)))


def _weights(value: str) -> Tuple[float, ...]:
    try:
        return tuple(float(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"combo_weights는 쉼표로 구분한 실수 3개여야 합니다: {value}") from None


def _stoplist(value: str) -> Tuple[str, str]:
    kind, sep, path = value.partition("=")
    if not sep or kind not in STOPWORD_KINDS or not path:
        kinds = ", ".join(STOPWORD_KINDS)
        raise argparse.ArgumentTypeError(f"--stoplist는 KIND=PATH 형식이어야 합니다 (KIND: {kinds}): {value}")
    return kind, path


def _load_stoplists(pairs: Sequence[Tuple[str, str]]) -> Optional[Dict[str, FrozenSet[str]]]:
    if not pairs:
        return None
    stoplists = {}
    for kind, path in pairs:
        if not Path(path).exists():
            raise ConfigError(f"불용어 목록 파일이 없습니다: {path}")
        stoplists[kind] = load_stopwords(path)
    return stoplists


def _overrides(args) -> dict:
    """CLI 플래그 → 설정 섹션별 덮어쓰기 (지정하지 않은 플래그는 None)"""
    return {
        "training": {
            "min_texts_per_descriptor": args.min_texts_per_descriptor,
            "min_chars_per_text": args.min_chars_per_text,
            "p_value": args.p_value,
            "min_texts_per_lemma": args.min_texts_per_lemma,
            "beta": args.beta,
            "min_associate_weight": args.min_associate_weight,
            "min_associates_per_descriptor": args.min_associates_per_descriptor,
            "workers": args.workers,
        },
        "assign": {
            "min_associates_present": args.min_associates_present,
            "combo_weights": args.combo_weights,
            "okapi_k1": args.okapi_k1,
            "okapi_b": args.okapi_b,
            "top_k": args.top_k,
            "require_label_in_text": True if args.require_label_in_text else None,
            "language": args.language,
        },
        "paths": {
            "thesaurus": args.thesaurus,
            "corpus": args.corpus,
            "model": args.model,
            "report": args.report,
            "output_dir": args.output_dir,
        },
        "split": {
            "test_fraction": args.test_fraction,
            "seed": args.seed,
        },
        "corpus": {
            "language": args.corpus_language,
        },
    }


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', help='실행 설정 JSON 파일')
    common.add_argument('-o', '--output-dir', help='결과 폴더 경로 (기본: ./indexer_output)')
    common.add_argument('--thesaurus', help='시소러스 JSON 파일')
    common.add_argument('--corpus', help='코퍼스 JSONL 파일')
    common.add_argument('--model', help='모델 파일 경로')
    common.add_argument('--report', help='평가 리포트 파일 경로')
    common.add_argument('--corpus-language', help='이 언어(lang)의 문서만 사용')

    log_group = common.add_mutually_exclusive_group()
    log_group.add_argument('-v', '--verbose', action='store_true', help='디버그 로그 출력')
    log_group.add_argument('-q', '--quiet', action='store_true', help='경고 이상만 출력')

    training = common.add_argument_group('학습 파라미터')
    training.add_argument('--min-texts-per-descriptor', type=int)
    training.add_argument('--min-chars-per-text', type=int)
    training.add_argument('--p-value', type=float)
    training.add_argument('--min-texts-per-lemma', type=int)
    training.add_argument('--beta', type=float)
    training.add_argument('--min-associate-weight', type=float)
    training.add_argument('--min-associates-per-descriptor', type=int)
    training.add_argument('--workers', type=int)

    assign = common.add_argument_group('할당 파라미터')
    assign.add_argument('--min-associates-present', type=int)
    assign.add_argument('--combo-weights', type=_weights, help='cos,okapi,dot (예: 0.4,0.2,0.4)')
    assign.add_argument('--okapi-k1', type=float)
    assign.add_argument('--okapi-b', type=float)
    assign.add_argument('--top-k', type=int)
    assign.add_argument('--require-label-in-text', action='store_true')
    assign.add_argument('--language')

    split = common.add_argument_group('분할 파라미터')
    split.add_argument('--test-fraction', type=float)
    split.add_argument('--seed', type=int)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        description='통제 어휘 디스크립터 자동 할당 도구',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
사용 예시:
  # 층화 분할
  python indexer_cli.py split --corpus corpus.jsonl --test-fraction 0.1

  # 학습
  python indexer_cli.py train -c config.json --corpus indexer_output/train.jsonl

  # 평가
  python indexer_cli.py evaluate indexer_output/test.jsonl -c config.json --ranks 1,3,5,8,10,11

  # 할당 결과를 TSV로 저장
  python indexer_cli.py assign docs.jsonl -c config.json --output ranked.tsv

  # 전처리 변형별 비교 실험
  python indexer_cli.py ablate indexer_output/test.jsonl --corpus indexer_output/train.jsonl --stoplist standard=stop.txt
        """
    )
    subparsers = parser.add_subparsers(dest='command', help='명령어')

    subparsers.add_parser('split', parents=[common], help='문서 유형별 층화 train/test 분할')

    train_parser = subparsers.add_parser('train', parents=[common], help='associate 리스트 학습')
    train_parser.add_argument('--progress', action='store_true', help='진행 표시줄 출력')

    assign_parser = subparsers.add_parser('assign', parents=[common], help='문서에 디스크립터 할당')
    assign_parser.add_argument('documents', help='할당할 문서 JSONL')
    assign_parser.add_argument('--output', help='TSV 출력 파일 (기본: 표준 출력)')
    assign_parser.add_argument('--table', action='store_true', help='문서별 순위표 출력')
    assign_parser.add_argument('--ignore-digest', action='store_true', help='전처리 설정 불일치 무시')

    eval_parser = subparsers.add_parser('evaluate', parents=[common], help='테스트 코퍼스 평가')
    eval_parser.add_argument('test', help='gold 디스크립터가 있는 테스트 JSONL')
    eval_parser.add_argument('--ranks', type=_ranks, default=DEFAULT_RANKS, help='예: 1,3,5,8,10,11')
    eval_parser.add_argument('--ignore-digest', action='store_true', help='전처리 설정 불일치 무시')

    base_parser = subparsers.add_parser('extract-baseline', parents=[common], help='라벨 일치 키워드 추출')
    base_parser.add_argument('documents', help='추출할 문서 JSONL')
    base_parser.add_argument('--ranks', type=_ranks, default=DEFAULT_RANKS)
    base_parser.add_argument('--use-lemmas', action='store_true')
    base_parser.add_argument('--use-stopwords', action='store_true')
    base_parser.add_argument('--use-non-descriptors', action='store_true')

    ablate_parser = subparsers.add_parser('ablate', parents=[common], help='전처리 변형 / 베이스라인 옵션별 비교 실험')
    ablate_parser.add_argument('test', help='gold 디스크립터가 있는 테스트 JSONL (학습 코퍼스는 --corpus)')
    ablate_parser.add_argument('--ranks', type=_ranks, default=DEFAULT_RANKS)
    ablate_parser.add_argument('--stoplist', type=_stoplist, action='append', default=[],
                               metavar='KIND=PATH', help='비교할 불용어 목록 (여러 번 지정 가능)')
    ablate_parser.add_argument('--progress', action='store_true', help='진행 표시줄 출력')

    show_parser = subparsers.add_parser('show-associates', parents=[common], help='associate 리스트 출력')
    show_parser.add_argument('--descriptor', required=True, help='디스크립터 ID')
    show_parser.add_argument('--top', type=int, help='상위 N개만 출력')
    return parser


def _configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(format='%(message)s', stream=sys.stderr)
    logging.getLogger().setLevel(level)


def run_split(agent: IndexingAgent, args):
    train_path, test_path = agent.split(agent.load_corpus())
    print(f"train\t{train_path}")
    print(f"test\t{test_path}")


def run_train(agent: IndexingAgent, args):
    summary = agent.train(agent.load_corpus(), progress=args.progress)
    print(f"trained\t{len(summary.trained)}")
    print(f"skipped_insufficient_texts\t{len(summary.skipped_insufficient_texts)}")
    print(f"skipped_few_associates\t{len(summary.skipped_few_associates)}")
    print(f"model\t{agent.model_path}")


def run_assign(agent: IndexingAgent, args):
    if agent.config.paths.thesaurus:
        agent.load_thesaurus()
    agent.load_model()
    results = agent.assign_documents(agent.load_corpus(args.documents), ignore_digest=args.ignore_digest)

    rows: List[str] = []
    for result in results:
        for rank, (descriptor_id, score) in enumerate(result.ranked, 1):
            rows.append(f"{result.document_id}\t{rank}\t{descriptor_id}\t{score!r}")

    if args.output:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(row + "\n" for row in rows), encoding="utf-8")
        logger.info(f"[ASSIGN] 결과 저장됨: {path}")
    else:
        for row in rows:
            print(row)

    if args.table:
        labels = agent.labels()
        for result in results:
            print(f"\n[{result.document_id}]")
            print(format_assignment(result, labels))


def run_evaluate(agent: IndexingAgent, args):
    if agent.config.assign.require_label_in_text:
        agent.load_thesaurus()
    agent.load_model()
    report = agent.evaluate(agent.load_corpus(args.test), args.ranks, ignore_digest=args.ignore_digest)
    print(report.format_table())


def run_extract_baseline(agent: IndexingAgent, args):
    agent.load_thesaurus()
    options = BaselineOptions(
        use_lemmas=args.use_lemmas,
        use_stopwords=args.use_stopwords,
        use_non_descriptors=args.use_non_descriptors,
    )
    extracted, report = agent.extract_baseline(agent.load_corpus(args.documents), options, args.ranks)
    for doc_id, descriptor_ids in extracted.items():
        print(f"{doc_id}\t{','.join(descriptor_ids)}")
    if report is not None:
        print(report.format_table())


def run_ablate(agent: IndexingAgent, args):
    if agent.config.paths.thesaurus:
        agent.load_thesaurus()
    report = agent.ablate(
        agent.load_corpus(),
        agent.load_corpus(args.test),
        stoplists=_load_stoplists(args.stoplist),
        ranks=args.ranks,
        progress=args.progress,
    )
    print(report.format_table())


def run_show_associates(agent: IndexingAgent, args):
    if agent.config.paths.thesaurus:
        agent.load_thesaurus()
    agent.load_model()
    print(agent.show_associates(args.descriptor, args.top))


COMMANDS = {
    'split': run_split,
    'train': run_train,
    'assign': run_assign,
    'evaluate': run_evaluate,
    'extract-baseline': run_extract_baseline,
    'ablate': run_ablate,
    'show-associates': run_show_associates,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command not in COMMANDS:
        parser.print_help()
        return 2

    _configure_logging(args)
    try:
        config = load_run_config(args.config, _overrides(args))
        agent = IndexingAgent(config)
        COMMANDS[args.command](agent, args)
    except IndexerError as e:
        logger.error(f"[ERROR] {type(e).__name__}: {e}")
        return 1
    except OSError as e:
        logger.error(f"[ERROR] {type(e).__name__}: {e}")
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
