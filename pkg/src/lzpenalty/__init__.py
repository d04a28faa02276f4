"""LZ penalty: repetition suppression for autoregressive decoding.

Simulates a sliding-window compressor over the token context and turns
the marginal codelength of each candidate next token into a logit
adjustment: cheap-to-encode continuations (long recent repetitions) get
pushed down, novel tokens get pushed up, and a softmax shift makes the
bookkeeping constants irrelevant.
"""

from .arith import ZeroProbabilityError, ac_decode, ac_encode
from .backends import active_backend
from .baselines import (
    FREQUENCY_SWEEP,
    REPETITION_SWEEP,
    BaselineConfig,
    frequency_penalty,
    repetition_penalty,
)
from .codec import (
    CodeBlock,
    CodecError,
    CodeStream,
    compression_rate,
    dual_pmf,
    lzss_decode,
    lzss_encode,
    pmf_from_codelengths,
)
from .evals import (
    RepetitionVerdict,
    degenerate_runs,
    detect_degenerate,
    distinct_n,
    run_bench,
    run_sweep,
    xent_under_model,
)
from .match import (
    Context,
    ExtensionMap,
    MatchResult,
    extension_map,
    find_longest_suffix_match,
    occurrence_distances,
    simulate_views,
)
from .models import LoopModel, NgramModel, load_corpus, model_from_spec, train_ngram
from .oracle import case_codelength_oracle, codelength_vector
from .penalty import (
    LzPenaltyConfig,
    apply_penalty,
    penalty_vector,
    penalty_vector_for_tokens,
)
from .sampler import (
    SamplerConfig,
    generate,
    softmax,
    temperature_scale,
    top_k_filter,
    top_p_filter,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineConfig",
    "CodeBlock",
    "CodeStream",
    "CodecError",
    "Context",
    "ExtensionMap",
    "FREQUENCY_SWEEP",
    "LoopModel",
    "LzPenaltyConfig",
    "MatchResult",
    "NgramModel",
    "REPETITION_SWEEP",
    "RepetitionVerdict",
    "SamplerConfig",
    "ZeroProbabilityError",
    "ac_decode",
    "ac_encode",
    "active_backend",
    "apply_penalty",
    "case_codelength_oracle",
    "codelength_vector",
    "compression_rate",
    "degenerate_runs",
    "detect_degenerate",
    "distinct_n",
    "dual_pmf",
    "extension_map",
    "find_longest_suffix_match",
    "frequency_penalty",
    "generate",
    "load_corpus",
    "lzss_decode",
    "lzss_encode",
    "model_from_spec",
    "occurrence_distances",
    "penalty_vector",
    "penalty_vector_for_tokens",
    "pmf_from_codelengths",
    "repetition_penalty",
    "run_bench",
    "run_sweep",
    "simulate_views",
    "softmax",
    "temperature_scale",
    "top_k_filter",
    "top_p_filter",
    "train_ngram",
    "xent_under_model",
]
