"""Constrained-selection baseline behind a pluggable completion client.

Open-ended generation produces out-of-vocabulary terms and unintended word
combinations, so the prompt restricts the model to choosing from the target
community's own vocabulary; anything returned outside it is discarded and
counted.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Protocol

import httpx

from ..errors import LLMClientError

PROMPT_TEMPLATE = (
    "You are a researcher in the field of {SOURCE_COMMUNITY}, researching the "
    "concept of {HOME_CONCEPT}.\n"
    "Find 10 similar concepts to this in the field of {TARGET_COMMUNITY}, "
    "separated by string comma.\n"
    "You are ONLY allowed to select from the following terms: {candidate_terms}.\n"
    "Do not combine different words in this vocabulary, you are ONLY allowed "
    "to select from them.\n"
)

DEFAULT_CANDIDATE_BUDGET = 4000


class CompletionClient(Protocol):
    def complete(self, prompt: str) -> str:
        """Prompt text in, completion text out. Raises LLMClientError on failure."""
        ...


class StubCompletionClient:
    """Deterministic canned-response client for tests and offline runs."""

    def __init__(self, response: str):
        self.response = response
        self.prompts: list[str] = []

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        return self.response


class HttpCompletionClient:
    """Posts to an OpenAI-compatible chat-completions endpoint at
    temperature 0. The API key is read from an environment variable so
    secrets never live in config files."""

    def __init__(self, endpoint: str, model: str, key_env: str = "CROSSLEX_LLM_KEY", timeout: float = 60.0):
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.key_env = key_env
        self.timeout = timeout

    def complete(self, prompt: str) -> str:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        payload = {
            "model": self.model,
            "temperature": 0,
            "messages": [{"role": "user", "content": prompt}],
        }
        try:
            resp = httpx.post(f"{self.endpoint}/chat/completions", json=payload, headers=headers, timeout=self.timeout)
            resp.raise_for_status()
            return resp.json()["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, ValueError) as exc:
            raise LLMClientError(f"completion request failed: {exc}") from exc


@dataclass
class LlmSelection:
    terms: list[str]
    discarded: int
    quality_warning: bool
    raw_response: str
    prompt: str


def build_prompt(source_community: str, home_concept: str, target_community: str, candidate_terms: list[str]) -> str:
    return PROMPT_TEMPLATE.format(
        SOURCE_COMMUNITY=source_community,
        HOME_CONCEPT=home_concept,
        TARGET_COMMUNITY=target_community,
        candidate_terms=", ".join(candidate_terms),
    )


def llm_select(
    query,
    target_vocabulary,
    client: CompletionClient,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> LlmSelection:
    """Ask the client to pick related target-community terms.

    Candidates are the most frequent ``candidate_budget`` vocabulary entries
    (the whole vocabulary rarely fits a context budget). The response is
    split on commas and trimmed; off-vocabulary terms are discarded and
    counted, and a majority of discards flags the response quality.
    """
    candidates = target_vocabulary.tokens[:candidate_budget]
    prompt = build_prompt(query.home_domain, query.term, query.target_domain, candidates)
    raw = client.complete(prompt)

    parts = [p.strip() for p in raw.split(",")]
    parts = [p for p in parts if p]
    kept: list[str] = []
    discarded = 0
    for part in parts:
        if part not in target_vocabulary:
            discarded += 1
        elif part not in kept:
            kept.append(part)
    warning = bool(parts) and discarded / len(parts) > 0.5
    return LlmSelection(
        terms=kept[: query.expansion_k],
        discarded=discarded,
        quality_warning=warning,
        raw_response=raw,
        prompt=prompt,
    )
