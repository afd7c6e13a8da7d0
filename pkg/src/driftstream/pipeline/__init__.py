from .config import ConfigError, PipelineConfig, load_config, parse_config
from .runner import PipelineRunner, RunResult, run_pipeline

__all__ = [
    "ConfigError",
    "PipelineConfig",
    "PipelineRunner",
    "RunResult",
    "load_config",
    "parse_config",
    "run_pipeline",
]
