"""Cross-domain concept search over aligned per-community embedding spaces.

Subpackages:
    corpus    ingestion, citation expansion, tokenization, phrases, vocabularies
    embed     skipgram-with-negative-sampling trainer and vector-space primitives
    align     orthogonal alignment between two domain spaces (seeded refinement
              and stochastic self-learning) and cross-space term mapping
    retrieve  query pipelines: term expansion, capped context retrieval,
              constrained-selection LLM baseline
    metrics   alignment-quality metrics (normalized modularity, salient-term
              cosine), LDA, rating capture and correlation
    app       CLI, workspace persistence, HTTP service
"""

__version__ = "0.1.0"
