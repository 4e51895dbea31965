from .rolling import roll, summarize, split_summary
from .pipeline_service import PipelineService, run_pipeline, compare_methods

__all__ = ["roll", "summarize", "split_summary", "PipelineService", "run_pipeline", "compare_methods"]
