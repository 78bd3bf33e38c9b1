"""Training loop: balanced task/mode schedule, gradient clipping, Adam."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import NonFiniteGradient
from .batch import Batch
from .config import EncoderConfig
from .data import EncodedPool
from .encoder import loss_and_grads

__all__ = ["TrainState", "schedule_next", "train_step", "train_model", "adam_update"]

MODES = ("tag", "gen")


@dataclass
class TrainState:
    n_tasks: int
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    counters: np.ndarray = None  # (n_tasks, 2): per (task, mode) step counts
    adam_m: dict = field(default_factory=dict)
    adam_v: dict = field(default_factory=dict)
    adam_t: dict = field(default_factory=dict)
    trainable: frozenset | None = None  # None = everything
    rng: np.random.Generator = None

    def __post_init__(self):
        if self.counters is None:
            self.counters = np.zeros((self.n_tasks, 2), dtype=np.int64)
        if self.rng is None:
            self.rng = np.random.Generator(np.random.PCG64(0))


def schedule_next(state: TrainState, n_tasks: int) -> tuple[int, str]:
    """Strict round-robin over the 2*n_tasks (task, mode) cells."""
    cell = state.step % (2 * n_tasks)
    return cell // 2, MODES[cell % 2]


def adam_update(param, grad, m, v, t, lr, beta1=0.9, beta2=0.999, eps=1e-8):
    """One Adam step with bias correction; returns updated (param, m, v)."""
    m = beta1 * m + (1.0 - beta1) * grad
    v = beta2 * v + (1.0 - beta2) * grad * grad
    m_hat = m / (1.0 - beta1 ** t)
    v_hat = v / (1.0 - beta2 ** t)
    param = param - lr * m_hat / (np.sqrt(v_hat) + eps)
    return param, m, v


def train_step(
    state: TrainState,
    params: dict,
    batch: Batch,
    config: EncoderConfig,
    clip: float = 1.0,
) -> tuple[float, float]:
    """One optimization step; returns (loss, pre-clip gradient norm).

    Only tensors on the batch's compute path that are also trainable get
    updated, so frozen weights and non-selected experts stay bit-identical.
    """
    loss, grads = loss_and_grads(config, params, batch)
    update = {
        name: g for name, g in grads.items()
        if state.trainable is None or name in state.trainable
    }
    sq = 0.0
    for name, g in update.items():
        total = float(np.sum(g.astype(np.float64) ** 2))
        if not np.isfinite(total):
            raise NonFiniteGradient(name)
        sq += total
    grad_norm = float(np.sqrt(sq))
    if clip is not None and grad_norm > clip:
        scale = clip / grad_norm
        for g in update.values():
            g *= scale
    for name, g in update.items():
        t = state.adam_t.get(name, 0) + 1
        state.adam_t[name] = t
        m = state.adam_m.get(name)
        v = state.adam_v.get(name)
        if m is None:
            m = np.zeros_like(params[name])
            v = np.zeros_like(params[name])
        params[name], state.adam_m[name], state.adam_v[name] = adam_update(
            params[name], g, m, v, t, state.lr, state.beta1, state.beta2, state.eps
        )
    state.counters[batch.intent, 0 if batch.mode == "tag" else 1] += 1
    state.step += 1
    return loss, grad_norm


def _sample_batch(pool: EncodedPool, intent: int, mode: str, batch_size: int, rng) -> Batch:
    n = pool.token_ids.shape[0]
    idx = rng.integers(0, n, size=min(batch_size, n)) if n > batch_size else np.arange(n)
    if n > batch_size:
        idx = rng.integers(0, n, size=batch_size)
    return Batch(
        token_ids=pool.token_ids[idx],
        attn_mask=pool.attn_mask[idx],
        intent=intent,
        mode=mode,
        labels=pool.labels[idx],
    )


def train_model(
    pools: dict,
    config: EncoderConfig,
    params: dict,
    steps: int,
    batch_size: int = 32,
    lr: float = 1e-3,
    seed: int = 0,
    clip: float = 1.0,
    tasks: list[int] | None = None,
    trainable: frozenset | None = None,
    state: TrainState | None = None,
    log_hook=None,
) -> tuple[dict, TrainState, list[dict]]:
    """Train over per-(task, mode) example pools with the balanced schedule.

    ``tasks`` restricts the rotation (used by fine-tuning); the default cycles
    through every intent exactly as the batch-level scheduler prescribes.
    """
    if state is None:
        state = TrainState(
            n_tasks=config.num_intents,
            lr=lr,
            trainable=trainable,
            rng=np.random.Generator(np.random.PCG64(seed)),
        )
    active = list(range(config.num_intents)) if tasks is None else list(tasks)
    cells = [(task, mode) for task in active for mode in MODES]
    log_rows: list[dict] = []
    for local_step in range(steps):
        if tasks is None:
            task, mode = schedule_next(state, config.num_intents)
        else:
            task, mode = cells[state.step % len(cells)]
        pool = pools.get((task, mode))
        if pool is None or pool.token_ids.shape[0] == 0:
            state.counters[task, 0 if mode == "tag" else 1] += 1
            state.step += 1
            continue
        batch = _sample_batch(pool, task, mode, batch_size, state.rng)
        loss, grad_norm = train_step(state, params, batch, config, clip=clip)
        row = {
            "step": state.step,
            "task": task,
            "mode": mode,
            "loss": round(loss, 6),
            "grad_norm": round(grad_norm, 6),
        }
        log_rows.append(row)
        if log_hook is not None:
            log_hook(row)
    return params, state, log_rows
