"""
Solver Configuration
Rule switches, time budgets, worker counts and logging for every entry point.
Values come from FLEXI_* environment variables (a local .env is merged first);
command-line flags override them.
"""

import logging
import os
import sys
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from dotenv import find_dotenv, load_dotenv

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
ALGORITHMS = ("fpa", "eba", "oracle")


class Environment(Enum):
    DEVELOPMENT = "development"
    TESTING = "testing"
    PRODUCTION = "production"


@dataclass(frozen=True)
class RuleSet:
    """Enable flags for the six pruning rules and degree-ordered candidates"""
    rule1: bool = True
    rule2: bool = True
    rule3: bool = True
    rule4: bool = True
    rule5: bool = True
    rule6: bool = True
    sort_candidates: bool = True

    def enabled(self, number: int) -> bool:
        if not 1 <= number <= 6:
            raise ValueError(f"rule number must be 1..6, got {number}")
        return getattr(self, f"rule{number}")

    def without(self, number: int) -> "RuleSet":
        self.enabled(number)
        return replace(self, **{f"rule{number}": False})

    @property
    def mask(self) -> str:
        """'111111S' style text: one digit per rule, then S(orted) or U(nsorted)"""
        digits = "".join("1" if self.enabled(i) else "0" for i in range(1, 7))
        return digits + ("S" if self.sort_candidates else "U")

    @classmethod
    def from_mask(cls, mask: str) -> "RuleSet":
        if len(mask) != 7 or any(c not in "01" for c in mask[:6]) or mask[6] not in "SU":
            raise ValueError(f"rule mask must look like '111111S', got {mask!r}")
        flags = {f"rule{i + 1}": mask[i] == "1" for i in range(6)}
        return cls(sort_candidates=mask[6] == "S", **flags)

    def ablations(self) -> List["RuleSet"]:
        """Full rule set, each single rule disabled, then unsorted candidates"""
        return [self] + [self.without(i) for i in range(1, 7)] + [replace(self, sort_candidates=False)]


@dataclass
class SolverConfig:
    """Knobs for one exact-search run"""
    rules: RuleSet = field(default_factory=RuleSet)
    heuristic_seed: bool = True
    timeout_s: Optional[float] = None
    debug_checks: bool = False
    progress_every: int = 100000


@dataclass
class BenchConfig:
    algorithms: Tuple[str, ...] = ("fpa", "eba")
    ablation: bool = False
    workers: int = 1
    solver: SolverConfig = field(default_factory=SolverConfig)


@dataclass
class AppConfig:
    environment: Environment = Environment.DEVELOPMENT
    log_level: int = logging.DEBUG
    log_dir: Optional[Path] = None
    data_dir: Path = Path("data")
    solver: SolverConfig = field(default_factory=SolverConfig)
    workers: int = 1


_DEFAULT_LEVELS = {
    Environment.DEVELOPMENT: logging.DEBUG,
    Environment.TESTING: logging.INFO,
    Environment.PRODUCTION: logging.WARNING,
}


def _env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def _env_float(name: str) -> Optional[float]:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return None
    try:
        return float(value)
    except ValueError:
        logger.warning(f"Ignoring non-numeric {name}={value!r}")
        return None


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={value!r}")
        return default


def _resolve_environment(environment: Optional[Environment]) -> Environment:
    if environment is not None:
        return environment
    name = os.getenv("FLEXI_ENV", Environment.DEVELOPMENT.value).strip().lower()
    try:
        return Environment(name)
    except ValueError:
        logger.warning(f"Unknown FLEXI_ENV={name!r}, using development")
        return Environment.DEVELOPMENT


def get_config(environment: Optional[Environment] = None) -> AppConfig:
    """Build the application config from the environment (and .env)"""
    load_dotenv(find_dotenv(usecwd=True))
    env = _resolve_environment(environment)

    level_name = os.getenv("FLEXI_LOG_LEVEL")
    log_level = _DEFAULT_LEVELS[env]
    if level_name:
        resolved = logging.getLevelName(level_name.strip().upper())
        if isinstance(resolved, int):
            log_level = resolved
        else:
            logger.warning(f"Unknown FLEXI_LOG_LEVEL={level_name!r}")

    log_dir = os.getenv("FLEXI_LOG_DIR")
    workers = _env_int("FLEXI_WORKERS", 1)

    solver = SolverConfig(
        timeout_s=_env_float("FLEXI_TIMEOUT_S"),
        debug_checks=_env_flag("FLEXI_DEBUG", env == Environment.TESTING),
    )
    return AppConfig(
        environment=env,
        log_level=log_level,
        log_dir=Path(log_dir) if log_dir else None,
        data_dir=Path(os.getenv("FLEXI_DATA_DIR", "data")),
        solver=solver,
        workers=workers,
    )


def get_development_config() -> AppConfig:
    return get_config(Environment.DEVELOPMENT)


def get_production_config() -> AppConfig:
    return get_config(Environment.PRODUCTION)


def validate_config(config: AppConfig) -> List[str]:
    """Return the list of problems; a missing data directory is only a warning"""
    problems = []
    if config.solver.timeout_s is not None and config.solver.timeout_s <= 0:
        problems.append(f"timeout must be positive, got {config.solver.timeout_s}")
    if config.workers < 1:
        problems.append(f"workers must be >= 1, got {config.workers}")
    if config.solver.progress_every < 1:
        problems.append(f"progress_every must be >= 1, got {config.solver.progress_every}")

    for problem in problems:
        logger.error(f"Invalid configuration: {problem}")
    if not config.data_dir.exists():
        logger.warning(f"Data directory {config.data_dir} does not exist; only built-in datasets load")
    return problems


def setup_logging(config: AppConfig):
    """Log to stderr (stdout carries reports) and optionally to logs/flexi_<env>.log"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.log_dir is not None:
        config.log_dir.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(config.log_dir / f"flexi_{config.environment.value}.log"))

    logging.basicConfig(
        level=config.log_level,
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
