from .index import InvertedIndex
from .contexts import ContextSentence, fetch_contexts, highlight_span
from .llm import (
    CompletionClient,
    HttpCompletionClient,
    StubCompletionClient,
    LlmSelection,
    llm_select,
    build_prompt,
    PROMPT_TEMPLATE,
)
from .pipelines import (
    PIPELINE_KINDS,
    Query,
    TermHit,
    edit_distance,
    nearest_terms,
    normalize_query_term,
    expand_terms,
    run_pipeline,
    flatten_pairs,
)
from .encoder import SentenceEncoder

__all__ = [
    "InvertedIndex",
    "ContextSentence",
    "fetch_contexts",
    "highlight_span",
    "CompletionClient",
    "HttpCompletionClient",
    "StubCompletionClient",
    "LlmSelection",
    "llm_select",
    "build_prompt",
    "PROMPT_TEMPLATE",
    "PIPELINE_KINDS",
    "Query",
    "TermHit",
    "edit_distance",
    "nearest_terms",
    "normalize_query_term",
    "expand_terms",
    "run_pipeline",
    "flatten_pairs",
    "SentenceEncoder",
]
