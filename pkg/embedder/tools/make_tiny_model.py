"""Build the bundled tiny model used by the test suite.

The full-size default model is far too heavy (and remote) for CI, so the
tests ship a randomly initialized two-layer model whose WordPiece vocabulary
is derived from the sample corpora:

* every pre-tokenized word from the samples becomes a whole-word entry,
  EXCEPT the designated split words, which tokenize into two pieces, and the
  designated unknown word, which falls back to a single UNK piece;
* the "##s" continuation piece makes the split words decomposable.

Weights are seeded, so regenerating the directory is reproducible:

    python3 tools/make_tiny_model.py
"""

from pathlib import Path

import torch
from tokenizers import Tokenizer, models, normalizers, pre_tokenizers
from tokenizers.processors import TemplateProcessing
from transformers import BertConfig, BertModel, PreTrainedTokenizerFast

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "data" / "tiny-bert"
SAMPLES = [ROOT / "samples" / "campus.txt", ROOT / "samples" / "town.txt"]

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
SPLIT_WORDS = {"notebooks", "classmates"}  # forced into word + "##s"
UNKNOWN_WORDS = {"kumquat"}  # kept out of the vocabulary entirely
EXTRA_WORDS = {"classmate"}  # split-word stems not occurring on their own
PIECES = ["##s"]

HIDDEN_SIZE = 32


def collect_words() -> list[str]:
    pre = pre_tokenizers.BertPreTokenizer()
    seen: dict[str, None] = {}
    for path in SAMPLES:
        for line in path.read_text(encoding="utf-8").splitlines():
            for word, _span in pre.pre_tokenize_str(line.lower()):
                if word not in SPLIT_WORDS and word not in UNKNOWN_WORDS:
                    seen.setdefault(word, None)
    for word in sorted(EXTRA_WORDS):
        seen.setdefault(word, None)
    return list(seen)


def main() -> None:
    words = SPECIALS + collect_words() + PIECES
    vocab = {w: i for i, w in enumerate(words)}

    tok = Tokenizer(models.WordPiece(vocab, unk_token="[UNK]"))
    tok.normalizer = normalizers.BertNormalizer(lowercase=True)
    tok.pre_tokenizer = pre_tokenizers.BertPreTokenizer()
    tok.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tok,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
        model_max_length=128,
    )

    torch.manual_seed(20240)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=HIDDEN_SIZE,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=128,
    )
    model = BertModel(config)

    OUT.mkdir(parents=True, exist_ok=True)
    fast.save_pretrained(OUT)
    model.save_pretrained(OUT)
    print(f"wrote {OUT} (vocab {len(vocab)}, hidden {HIDDEN_SIZE})")


if __name__ == "__main__":
    main()
