"""
Runtime configuration for suites, pipelines and the command line.
"""

import os
import json
import yaml
import dataclasses
from dataclasses import dataclass, field
from typing import Optional, Literal
from dotenv import load_dotenv
from typeguard import TypeCheckError, check_type

load_dotenv()

ENV_PREFIX = "KPVERIFY_"


@dataclass
class Config:
    # Reproducibility
    seed: int = 20240517

    # Model shape
    matrix_dim: int = 1
    penner_power: int = 1
    eigenvalues: list[str] = field(default_factory=lambda: ["1"])

    # Truncation caps
    depth: int = 3
    s_cap: int = 2
    sminus_cap: Optional[int] = None
    s_time_caps: Optional[list[int]] = None

    # Virasoro / extraction
    virasoro_weight: int = 4
    range_convention: Literal["corrected", "as-written"] = "corrected"
    extraction_retries: int = 3
    held_out_tuples: int = 2

    allow_laurent_s: bool = False

    # Quadrature (the only inexact module)
    tol: float = 1e-6
    quadrature_order: int = 24

    # Execution
    max_workers: int = 4
    pairing_budget: int = 20_000_000
    output_format: Literal["json", "csv"] = "json"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    @classmethod
    def _process_env_vars(cls, config_dict):
        """
        Overlay ``KPVERIFY_<FIELD>`` environment variables on a config mapping.

        Values are JSON-decoded first and kept only if they type-check against the
        field annotation; otherwise the raw string is tried.
        """
        if not isinstance(config_dict, dict):
            config_dict = {}

        for f in dataclasses.fields(cls):
            env_var_name = f"{ENV_PREFIX}{f.name.upper()}"
            if env_var_name not in os.environ:
                continue
            env_value = os.environ[env_var_name]

            try:
                parsed_value = json.loads(env_value)
                try:
                    check_type(parsed_value, f.type)
                    config_dict[f.name] = parsed_value
                    continue
                except TypeCheckError:
                    pass
            except json.JSONDecodeError:
                pass

            try:
                check_type(env_value, f.type)
                config_dict[f.name] = env_value
            except TypeCheckError:
                pass

        return config_dict

    @classmethod
    def _from_mapping(cls, overwrite_config: dict) -> "Config":
        overwrite_config = cls._process_env_vars(overwrite_config)
        fields = {f.name for f in dataclasses.fields(cls)}
        filtered_config = {k: v for k, v in overwrite_config.items() if k in fields}
        return cls(**filtered_config)

    @classmethod
    def load_config(cls, config_file_path: str) -> "Config":
        """Load from a YAML file or a key=value file, chosen by extension."""
        if not os.path.exists(config_file_path):
            return cls._from_mapping({})
        if config_file_path.endswith((".yaml", ".yml")):
            return cls.from_yaml_file(config_file_path)
        return cls.from_kv_file(config_file_path)

    @classmethod
    def from_yaml_file(cls, yaml_file_path: str) -> "Config":
        """Load Config from a specific YAML file path."""
        if not os.path.exists(yaml_file_path):
            overwrite_config = {}
        else:
            with open(yaml_file_path) as f:
                overwrite_config = yaml.safe_load(f) or {}
        return cls._from_mapping(overwrite_config)

    @classmethod
    def from_kv_file(cls, kv_file_path: str) -> "Config":
        """Load Config from ``key=value`` lines; ``#`` starts a comment.

        Values are parsed as YAML scalars, so ``depth=4`` is an int and
        ``eigenvalues=[1, 3/2]`` is a list.
        """
        overwrite_config = {}
        if os.path.exists(kv_file_path):
            with open(kv_file_path) as f:
                for raw in f:
                    line = raw.split("#", 1)[0].strip()
                    if not line or "=" not in line:
                        continue
                    key, value = (part.strip() for part in line.split("=", 1))
                    key = key.replace("-", "_")
                    parsed = yaml.safe_load(value) if value else None
                    if key == "eigenvalues":
                        parsed = _as_eigenvalue_list(value if isinstance(parsed, str) else parsed)
                    overwrite_config[key] = parsed
        return cls._from_mapping(overwrite_config)

    def with_overrides(self, **overrides) -> "Config":
        """Return a copy where every non-None override replaces the stored value."""
        values = dataclasses.asdict(self)
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in values:
                from kpverify.utils.errors import ConfigurationError

                raise ConfigurationError(f"Unknown configuration key: {key}")
            values[key] = value
        return type(self)(**values)

    def __post_init__(self):
        from kpverify.utils.errors import ConfigurationError

        self.eigenvalues = _as_eigenvalue_list(self.eigenvalues)
        if self.matrix_dim < 1:
            raise ConfigurationError("matrix_dim must be at least 1")
        if self.penner_power < 0:
            raise ConfigurationError("penner_power must be non-negative")
        for name in ("depth", "s_cap", "virasoro_weight", "quadrature_order"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} must be non-negative")
        if self.sminus_cap is not None and self.sminus_cap < 0:
            raise ConfigurationError("sminus_cap must be non-negative")
        if self.s_time_caps is not None and any(c < 0 for c in self.s_time_caps):
            raise ConfigurationError("s_time_caps entries must be non-negative")
        if self.max_workers < 1:
            raise ConfigurationError("max_workers must be at least 1")
        if not 0 < self.tol < 1:
            raise ConfigurationError("tol must lie in (0, 1)")
        if self.range_convention not in ("corrected", "as-written"):
            raise ConfigurationError(f"Unknown range_convention: {self.range_convention}")

    @property
    def effective_sminus_cap(self) -> int:
        """s_- cap actually used; each s_- carries two ε so depth // 2 suffices."""
        if self.sminus_cap is not None:
            return self.sminus_cap
        return self.depth // 2

    def lambda_tuple(self) -> tuple:
        """Eigenvalues as exact rationals, padded or checked against matrix_dim."""
        from kpverify.core.ring.scalar import parse_rational

        values = tuple(parse_rational(v) for v in self.eigenvalues)
        if len(values) != self.matrix_dim:
            from kpverify.utils.errors import ConfigurationError

            raise ConfigurationError(
                f"{len(values)} eigenvalues given for matrix_dim={self.matrix_dim}"
            )
        return values


def _as_eigenvalue_list(value) -> list[str]:
    if value is None:
        return ["1"]
    if isinstance(value, str):
        parts = value.strip().strip("[]()").split(",")
        return [p.strip() for p in parts if p.strip()]
    return [str(v).strip() for v in value]
