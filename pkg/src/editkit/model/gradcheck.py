"""Finite-difference verification of the hand-written backward pass."""

from dataclasses import dataclass

import numpy as np

from .batch import Batch
from .config import EncoderConfig
from .encoder import _forward_core, loss_and_grads
from .losses import cross_entropy_with_grad
from .params import init_params

__all__ = ["gradcheck", "GradCheckResult", "toy_config"]


@dataclass
class GradCheckResult:
    max_rel_error: float
    worst_tensor: str
    per_tensor: dict

    def passed(self, threshold: float = 1e-4) -> bool:
        return self.max_rel_error <= threshold


def toy_config(**overrides) -> EncoderConfig:
    base = dict(
        num_layers=2,
        hidden_dim=8,
        num_heads=2,
        ffn_dim=16,
        vocab_size=30,
        max_seq_len=16,
        num_intents=2,
        intent_names=("a", "b"),
        num_tags=6,
        sparsity_mode="sparse_ffn",
        router="task_id",
        seed=0,
    )
    base.update(overrides)
    return EncoderConfig(**base)


def _probe_batches(config: EncoderConfig, seed: int) -> list[Batch]:
    rng = np.random.Generator(np.random.PCG64(seed))
    batches = []
    s = 6
    tasks = sorted({0, config.num_intents - 1})
    for task in tasks:
        for mode in ("tag", "gen"):
            ids = rng.integers(1, config.vocab_size, size=(2, s))
            mask = np.ones((2, s), dtype=np.float64)
            mask[1, -1] = 0.0
            ids[1, -1] = 0
            labels = np.full((2, s), -1, dtype=np.int64)
            if mode == "tag":
                labels[:, :4] = rng.integers(0, config.num_tags, size=(2, 4))
                labels[1, -1] = -1
            else:
                labels[0, 2] = rng.integers(0, config.vocab_size)
                labels[1, 3] = 0  # [PAD] target class
            batches.append(Batch(
                token_ids=ids, attn_mask=mask, intent=task, mode=mode, labels=labels,
            ))
    return batches


def _objective(config, params, batches) -> float:
    total = 0.0
    for batch in batches:
        _hidden, logits, _caches, _mask = _forward_core(config, params, batch)
        loss, _ = cross_entropy_with_grad(logits, batch.labels)
        if batch.mode == "gen":
            loss *= config.lambda_generation
        total += loss
    return total


def gradcheck(
    config: EncoderConfig | None = None,
    seed: int = 0,
    h: float = 1e-5,
    threshold: float = 1e-4,
) -> GradCheckResult:
    """Compare analytic gradients with central differences at float64.

    Every entry of every parameter tensor is perturbed. Relative error is
    |a - n| / max(|a| + |n|, 1e-4): the denominator floor absorbs the
    ~1e-10 resolution limit of central differences at 64-bit (cancellation
    in the objective), while still demanding 1e-8 absolute agreement from
    near-zero gradients, so non-selected experts must come out exact and a
    wrong backward formula cannot hide.
    """
    config = config or toy_config()
    params = init_params(config, seed=seed, dtype=np.float64)
    batches = _probe_batches(config, seed)

    analytic: dict = {}
    for batch in batches:
        _loss, grads = loss_and_grads(config, params, batch)
        for name, g in grads.items():
            analytic[name] = analytic.get(name, 0.0) + g

    per_tensor: dict = {}
    worst = 0.0
    worst_name = ""
    for name in sorted(params):
        tensor = params[name]
        grad = analytic.get(name, np.zeros_like(tensor))
        flat = tensor.reshape(-1)
        gflat = np.asarray(grad, dtype=np.float64).reshape(-1)
        tensor_worst = 0.0
        for idx in range(flat.size):
            keep = flat[idx]
            flat[idx] = keep + h
            up = _objective(config, params, batches)
            flat[idx] = keep - h
            down = _objective(config, params, batches)
            flat[idx] = keep
            numeric = (up - down) / (2.0 * h)
            a = gflat[idx]
            rel = abs(a - numeric) / max(abs(a) + abs(numeric), 1e-4)
            tensor_worst = max(tensor_worst, rel)
        per_tensor[name] = tensor_worst
        if tensor_worst > worst:
            worst, worst_name = tensor_worst, name
    return GradCheckResult(max_rel_error=worst, worst_tensor=worst_name, per_tensor=per_tensor)
