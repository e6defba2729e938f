"""
Verification reports: named checks with pass/fail and witnesses
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'check': self.name, 'passed': self.passed, 'witness': self.witness}


@dataclass
class VerificationReport:
    """Ordered list of checks; every failure carries a witness"""

    subject: str
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Optional[str] = None) -> CheckResult:
        if not passed and not witness:
            witness = "no witness recorded"
        result = CheckResult(name, bool(passed), witness)
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(CheckResult(prefix + check.name, check.passed, check.witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)

    def failed_names(self) -> List[str]:
        return [c.name for c in self.failures()]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subject': self.subject,
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks],
        }
