"""Vectorize word instances with a contextualized language model.

Input is one sentence per line.  Every surviving token occurrence becomes
one record carrying the lowercased surface form, the full sentence, and the
token's hidden-state vector.  Three filters condition the corpus:

* sentences containing the ``@`` placeholder are skipped entirely (some
  corpora blank out spans with it, which would poison the statistics);
* tokens that the model splits into multiple sub-words are skipped, so a
  record always carries one whole-word vector;
* tokens with any non-alphabetic character are skipped.

A token unknown to the vocabulary still maps to a single (UNK) piece and is
kept; the filters are purely surface- and split-based.  Sentences longer
than the model's (or the configured) limit are skipped and counted, never
fatal.  Records appear in input order regardless of batching.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch

from .writer import Record

DEFAULT_MODEL = "bert-large-uncased"


@dataclass
class EmbedderConfig:
    model: str = DEFAULT_MODEL
    corpus_label: str = ""
    max_len: int = 512  # in model tokens, specials included
    output_format: str = "binary"
    layer: int = -1  # index into the hidden-state stack; -1 = final layer
    batch_size: int = 16

    @property
    def model_id(self) -> str:
        tag = "last" if self.layer == -1 else f"layer{self.layer}"
        return f"{self.model}@{tag}"


@dataclass
class EmbedResult:
    dim: int
    model_id: str
    corpus_label: str
    records: list[Record]
    skipped_placeholder: int = 0  # sentences containing '@'
    skipped_too_long: int = 0


def load_model(name_or_path: str):
    from transformers import AutoModel, AutoTokenizer
    from transformers.utils import logging as hf_logging

    hf_logging.disable_progress_bar()
    tokenizer = AutoTokenizer.from_pretrained(name_or_path)
    model = AutoModel.from_pretrained(name_or_path)
    model.eval()
    return tokenizer, model


def embed_corpus(lines, config: EmbedderConfig, tokenizer=None, model=None) -> EmbedResult:
    """Run the pipeline over an iterable of sentences.

    Pass a preloaded (tokenizer, model) pair to amortize model setup across
    corpora; otherwise ``config.model`` is loaded here.
    """
    if tokenizer is None or model is None:
        tokenizer, model = load_model(config.model)
    dim = model.config.hidden_size

    model_limit = getattr(tokenizer, "model_max_length", None)
    effective_max = config.max_len
    if isinstance(model_limit, int) and 0 < model_limit < 10**6:
        effective_max = min(effective_max, model_limit)

    result = EmbedResult(dim, config.model_id, config.corpus_label, [])
    batch: list[str] = []
    for raw in lines:
        sentence = raw.rstrip("\n")
        if not sentence.strip():
            continue
        if "@" in sentence:
            result.skipped_placeholder += 1
            continue
        batch.append(sentence)
        if len(batch) == config.batch_size:
            _embed_batch(batch, tokenizer, model, config.layer, effective_max, result)
            batch = []
    if batch:
        _embed_batch(batch, tokenizer, model, config.layer, effective_max, result)
    return result


def _embed_batch(sentences, tokenizer, model, layer, max_len, result: EmbedResult) -> None:
    lengths = [len(ids) for ids in tokenizer(sentences)["input_ids"]]
    kept = [s for s, n in zip(sentences, lengths) if n <= max_len]
    result.skipped_too_long += len(sentences) - len(kept)
    if not kept:
        return

    enc = tokenizer(kept, padding=True, return_tensors="pt")
    with torch.no_grad():
        hidden = model(**enc, output_hidden_states=True).hidden_states[layer]
    vectors = hidden.numpy().astype("<f4")

    for i, sentence in enumerate(kept):
        word_ids = enc.word_ids(i)
        pieces_per_word: dict[int, list[int]] = {}
        for pos, wid in enumerate(word_ids):
            if wid is not None:
                pieces_per_word.setdefault(wid, []).append(pos)
        for wid in sorted(pieces_per_word):
            positions = pieces_per_word[wid]
            if len(positions) != 1:
                continue  # split into sub-words
            span = enc.word_to_chars(i, wid)
            surface = sentence[span.start : span.end]
            if not surface.isalpha():
                continue
            result.records.append(
                Record(
                    surface.lower(),
                    len(result.records),
                    sentence,
                    vectors[i, positions[0]],
                )
            )
