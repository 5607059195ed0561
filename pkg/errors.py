"""
디스크립터 인덱서 예외 계층
모든 모듈이 공유하는 오류 타입 정의
"""

from typing import Optional


class IndexerError(Exception):
    """인덱서 전체의 기본 예외"""


class ConfigError(IndexerError, ValueError):
    """설정 파일/설정 값 오류"""


class ThesaurusError(IndexerError, ValueError):
    """시소러스 파일 파싱/검증 오류 (디스크립터 ID와 줄 번호 포함)"""

    def __init__(self, message: str, descriptor_id: Optional[str] = None, line: Optional[int] = None):
        self.descriptor_id = descriptor_id
        self.line = line
        where = []
        if descriptor_id is not None:
            where.append(f"descriptor={descriptor_id}")
        if line is not None:
            where.append(f"line={line}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class UnknownDescriptorError(IndexerError, LookupError):
    """존재하지 않는 디스크립터 ID"""

    def __init__(self, descriptor_id: str):
        self.descriptor_id = descriptor_id
        super().__init__(f"알 수 없는 디스크립터: {descriptor_id}")


class UnknownLanguageError(IndexerError, LookupError):
    """시소러스에 선언되지 않은 언어"""

    def __init__(self, language: str):
        self.language = language
        super().__init__(f"알 수 없는 언어: {language}")


class CorpusError(IndexerError, ValueError):
    """코퍼스 파일 파싱/검증 오류"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        suffix = f" (line={line})" if line is not None else ""
        super().__init__(f"{message}{suffix}")


class StatsError(IndexerError, ValueError):
    """통계 함수 입력값 오류"""


class TrainingError(IndexerError, ValueError):
    """학습 단계 오류"""


class AssignmentError(IndexerError, ValueError):
    """디스크립터 할당 단계 오류"""


class EvaluationError(IndexerError, ValueError):
    """평가 단계 오류"""


class ModelFormatError(IndexerError, ValueError):
    """모델 파일이 손상되었거나 형식이 맞지 않음"""


class ModelVersionError(ModelFormatError):
    """지원하지 않는 모델 파일 버전"""

    def __init__(self, found, expected: int):
        self.found = found
        self.expected = expected
        super().__init__(f"모델 파일 버전 불일치: found={found}, expected={expected}")
