"""Encoder configuration."""

from dataclasses import dataclass, field, asdict

__all__ = ["EncoderConfig", "SPARSITY_MODES", "ROUTERS", "GRANULARITIES", "MODES"]

SPARSITY_MODES = ("dense", "sparse_ffn", "sparse_last_layer")
ROUTERS = ("task_id", "linear", "task_id_linear")
GRANULARITIES = ("sequence", "token")
MODES = ("tag", "gen")


@dataclass
class EncoderConfig:
    num_layers: int = 4
    hidden_dim: int = 128
    num_heads: int = 4
    ffn_dim: int = 512
    vocab_size: int = 8000
    max_seq_len: int = 128
    num_intents: int = 4
    intent_names: tuple = ("fluency", "readability", "simplification", "neutralization")
    sparsity_mode: str = "sparse_ffn"
    router: str = "task_id"
    routing_granularity: str = "sequence"
    share_tag_gen: bool = False
    lambda_generation: float = 1.0
    n_masks: int = 4
    softmax_temperature: float = 0.7
    router_init_std: float = 0.001
    init_std: float = 0.02
    tag_set: str = "core14"
    num_tags: int = 15  # tag-set size plus the internal MERGED marker class
    seed: int = 0

    def __post_init__(self):
        if self.hidden_dim % self.num_heads != 0:
            raise ValueError("hidden_dim must be divisible by num_heads")
        if self.lambda_generation < 0:
            raise ValueError("lambda must be >= 0")
        if self.num_intents < 1:
            raise ValueError("need at least one intent")
        if self.sparsity_mode not in SPARSITY_MODES:
            raise ValueError(f"sparsity_mode must be one of {SPARSITY_MODES}")
        if self.router not in ROUTERS:
            raise ValueError(f"router must be one of {ROUTERS}")
        if self.routing_granularity not in GRANULARITIES:
            raise ValueError(f"routing_granularity must be one of {GRANULARITIES}")
        if len(self.intent_names) != self.num_intents:
            raise ValueError("intent_names must match num_intents")
        self.intent_names = tuple(self.intent_names)

    @property
    def head_dim(self) -> int:
        return self.hidden_dim // self.num_heads

    @property
    def expert_modes(self) -> tuple:
        """Expert addressing along the mode axis; collapsed when shared."""
        return ("shared",) if self.share_tag_gen else MODES

    def experts_per_slot(self) -> int:
        return self.num_intents * len(self.expert_modes)

    def intent_id(self, name: str) -> int:
        return self.intent_names.index(name)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["intent_names"] = list(self.intent_names)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "EncoderConfig":
        data = dict(data)
        data["intent_names"] = tuple(data.get("intent_names", ()))
        return cls(**data)
