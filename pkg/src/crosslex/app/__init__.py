from .config import ServiceConfig, load_config
from .stages import PrepParams, stage_align, stage_eval, stage_expand, stage_ingest, stage_train
from .workspace import load_manifest, save_manifest, validate_workspace

__all__ = [
    "ServiceConfig",
    "load_config",
    "PrepParams",
    "stage_ingest",
    "stage_expand",
    "stage_train",
    "stage_align",
    "stage_eval",
    "load_manifest",
    "save_manifest",
    "validate_workspace",
]
