"""Parameter store: named tensors, initialization, expert cloning, freezing.

Expert tensors live under ``layer{l}.expert.{mode}.r{r}.*`` so extending the
task axis never renumbers existing experts. Base weights are drawn in a fixed
order independent of the sparsity mode, and experts start as copies of the
corresponding backbone draw, which makes a sparse model's forward pass equal a
dense model's at initialization under task-id routing.
"""

import numpy as np

from ..errors import UnknownIntent
from .config import EncoderConfig

__all__ = [
    "init_params", "expert_flat_index", "expert_prefix", "router_key",
    "head_key", "clone_expert", "freeze_for_finetune", "sparse_layers",
]

MODE_Z = {"tag": 0, "gen": 1, "shared": 0}


def expert_flat_index(r: int, z: int, n: int) -> int:
    """Conceptual expert layout inside one slot: index = z*n + r."""
    return z * n + r


def expert_prefix(layer: int, mode: str, r: int) -> str:
    return f"layer{layer}.expert.{mode}.r{r}"


def router_key(config: EncoderConfig, layer: int, intent: int) -> str:
    if config.router == "task_id_linear":
        return f"layer{layer}.router.t{intent}"
    return f"layer{layer}.router"


def head_key(config: EncoderConfig, mode: str, intent: int) -> str:
    """Heads are shared across tasks except in the dense baseline, where task
    differentiation happens only at the classification layers."""
    if config.sparsity_mode == "dense":
        return f"head.{mode}.t{intent}"
    return f"head.{mode}"


def sparse_layers(config: EncoderConfig) -> list[int]:
    if config.sparsity_mode == "sparse_ffn":
        return list(range(config.num_layers))
    if config.sparsity_mode == "sparse_last_layer":
        return [config.num_layers - 1]
    return []


def _attn_shapes(d: int) -> dict:
    shapes = {}
    for name in ("wq", "wk", "wv", "wo"):
        shapes[f"attn.{name}"] = (d, d)
    for name in ("bq", "bk", "bv", "bo"):
        shapes[f"attn.{name}"] = (d,)
    return shapes


def _layer_base(config: EncoderConfig, rng, dtype) -> dict:
    d, f = config.hidden_dim, config.ffn_dim
    base: dict = {}
    for name, shape in _attn_shapes(d).items():
        base[name] = (
            rng.normal(0.0, config.init_std, size=shape).astype(dtype)
            if name.startswith("attn.w") else np.zeros(shape, dtype=dtype)
        )
    for ln in ("ln1", "ln2"):
        base[f"{ln}.g"] = np.ones(d, dtype=dtype)
        base[f"{ln}.b"] = np.zeros(d, dtype=dtype)
    base["ffn.w1"] = rng.normal(0.0, config.init_std, size=(d, f)).astype(dtype)
    base["ffn.b1"] = np.zeros(f, dtype=dtype)
    base["ffn.w2"] = rng.normal(0.0, config.init_std, size=(f, d)).astype(dtype)
    base["ffn.b2"] = np.zeros(d, dtype=dtype)
    return base


def init_params(config: EncoderConfig, seed: int | None = None, dtype=np.float32) -> dict:
    rng = np.random.Generator(np.random.PCG64(config.seed if seed is None else seed))
    d = config.hidden_dim
    params: dict = {
        "embed.token": rng.normal(0.0, config.init_std, size=(config.vocab_size, d)).astype(dtype),
        "embed.pos": rng.normal(0.0, config.init_std, size=(config.max_seq_len, d)).astype(dtype),
    }
    layer_bases = [_layer_base(config, rng, dtype) for _ in range(config.num_layers)]
    head_base = {
        "tag.w": rng.normal(0.0, config.init_std, size=(d, config.num_tags)).astype(dtype),
        "tag.b": np.zeros(config.num_tags, dtype=dtype),
        "gen.w": rng.normal(0.0, config.init_std, size=(d, config.vocab_size)).astype(dtype),
        "gen.b": np.zeros(config.vocab_size, dtype=dtype),
    }

    slot_layers = set(sparse_layers(config))
    for layer, base in enumerate(layer_bases):
        if layer in slot_layers and config.sparsity_mode == "sparse_last_layer":
            for mode in config.expert_modes:
                for r in range(config.num_intents):
                    prefix = expert_prefix(layer, mode, r)
                    for name, value in base.items():
                        params[f"{prefix}.{name}"] = value.copy()
        elif layer in slot_layers:  # sparse_ffn: only the FFN is expert-owned
            for name, value in base.items():
                if not name.startswith("ffn."):
                    params[f"layer{layer}.{name}"] = value
            for mode in config.expert_modes:
                for r in range(config.num_intents):
                    prefix = expert_prefix(layer, mode, r)
                    for name, value in base.items():
                        if name.startswith("ffn."):
                            params[f"{prefix}.{name}"] = value.copy()
        else:
            for name, value in base.items():
                params[f"layer{layer}.{name}"] = value

    if config.sparsity_mode == "dense":
        for mode in ("tag", "gen"):
            for r in range(config.num_intents):
                params[f"head.{mode}.t{r}.w"] = head_base[f"{mode}.w"].copy()
                params[f"head.{mode}.t{r}.b"] = head_base[f"{mode}.b"].copy()
    else:
        for mode in ("tag", "gen"):
            params[f"head.{mode}.w"] = head_base[f"{mode}.w"]
            params[f"head.{mode}.b"] = head_base[f"{mode}.b"]

    if config.router in ("linear", "task_id_linear"):
        n_candidates = config.num_intents
        for layer in sparse_layers(config):
            keys = (
                [f"layer{layer}.router.t{r}" for r in range(config.num_intents)]
                if config.router == "task_id_linear" else [f"layer{layer}.router"]
            )
            for key in keys:
                params[f"{key}.w"] = rng.normal(
                    0.0, config.router_init_std, size=(d, n_candidates)
                ).astype(dtype)
                params[f"{key}.b"] = np.zeros(n_candidates, dtype=dtype)
    return params


def clone_expert(
    params: dict,
    config: EncoderConfig,
    source_intent: int | str,
    copies: int,
    new_names: list[str] | None = None,
) -> tuple[dict, EncoderConfig]:
    """Append ``copies`` new task slots whose tensors are bit-identical copies
    of the source intent's, extending routers and dense heads to match."""
    src = (
        config.intent_id(source_intent)
        if isinstance(source_intent, str) else int(source_intent)
    )
    if not 0 <= src < config.num_intents:
        raise UnknownIntent(f"intent {source_intent!r}")
    if new_names is None:
        new_names = [
            f"{config.intent_names[src]}_clone{i}" for i in range(1, copies + 1)
        ]
    if len(new_names) != copies:
        raise ValueError("need one name per copy")

    out = dict(params)
    n_old = config.num_intents
    for layer in sparse_layers(config):
        for mode in config.expert_modes:
            src_prefix = expert_prefix(layer, mode, src)
            suffixes = [
                key[len(src_prefix):] for key in params if key.startswith(src_prefix + ".")
            ]
            for i in range(copies):
                dst_prefix = expert_prefix(layer, mode, n_old + i)
                for suffix in suffixes:
                    out[dst_prefix + suffix] = params[src_prefix + suffix].copy()
        if config.router == "linear":
            key = f"layer{layer}.router"
            out[f"{key}.w"] = _extend_columns(params[f"{key}.w"], src, copies)
            out[f"{key}.b"] = _extend_columns(params[f"{key}.b"], src, copies)
        elif config.router == "task_id_linear":
            for i in range(copies):
                src_key = f"layer{layer}.router.t{src}"
                dst_key = f"layer{layer}.router.t{n_old + i}"
                out[f"{dst_key}.w"] = _extend_columns(params[f"{src_key}.w"], src, copies)
                out[f"{dst_key}.b"] = _extend_columns(params[f"{src_key}.b"], src, copies)
    if config.sparsity_mode == "dense":
        for mode in ("tag", "gen"):
            for i in range(copies):
                for leaf in ("w", "b"):
                    out[f"head.{mode}.t{n_old + i}.{leaf}"] = params[
                        f"head.{mode}.t{src}.{leaf}"
                    ].copy()

    new_config = EncoderConfig.from_dict({
        **config.to_dict(),
        "num_intents": n_old + copies,
        "intent_names": list(config.intent_names) + list(new_names),
    })
    if config.router == "task_id_linear":
        # existing per-task routers also need the widened candidate axis
        for layer in sparse_layers(config):
            for r in range(n_old):
                key = f"layer{layer}.router.t{r}"
                out[f"{key}.w"] = _extend_columns(out[f"{key}.w"], src, copies)
                out[f"{key}.b"] = _extend_columns(out[f"{key}.b"], src, copies)
    return out, new_config


def _extend_columns(tensor: np.ndarray, src_col: int, copies: int) -> np.ndarray:
    """Widen the trailing candidate axis by replicating the source column."""
    reps = [tensor[..., src_col:src_col + 1]] * copies
    return np.concatenate([tensor] + reps, axis=-1)


def freeze_for_finetune(params: dict) -> frozenset:
    """Trainable set for additional fine-tuning: expert tensors only."""
    trainable = frozenset(name for name in params if ".expert." in name)
    if not trainable:
        raise ValueError("model has no expert tensors to fine-tune")
    return trainable
