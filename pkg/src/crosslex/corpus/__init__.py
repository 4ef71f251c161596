from .records import PaperRecord, Sentence, CorpusStats, DomainCorpus, ingest_records
from .text import split_sentences, tokenize, segment_and_tokenize, TOKENIZER_VERSION
from .phrases import PhraseTable, merge_phrases, apply_phrase_table
from .vocab import Vocabulary, build_vocabulary
from .citations import (
    CitationClient,
    StaticCitationClient,
    HttpCitationClient,
    ExpansionResult,
    expand_citations,
)
from .store import save_corpus, load_corpus, load_vocabulary, corpus_dir

__all__ = [
    "PaperRecord",
    "Sentence",
    "CorpusStats",
    "DomainCorpus",
    "ingest_records",
    "split_sentences",
    "tokenize",
    "segment_and_tokenize",
    "TOKENIZER_VERSION",
    "PhraseTable",
    "merge_phrases",
    "apply_phrase_table",
    "Vocabulary",
    "build_vocabulary",
    "CitationClient",
    "StaticCitationClient",
    "HttpCitationClient",
    "ExpansionResult",
    "expand_citations",
    "save_corpus",
    "load_corpus",
    "load_vocabulary",
    "corpus_dir",
]
