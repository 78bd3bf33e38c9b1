"""Expert selection for sparse slots.

Task-id routing statically picks the expert addressed by (intent, mode) with
gate 1. Learned routing projects the context (mean-pooled sequence state, or
each token's state) to per-expert logits, softmaxes with temperature, takes
the top-1 expert, and scales its output by that probability so the router
itself receives gradient. Candidates are the experts of the batch's mode.
"""

from dataclasses import dataclass

import numpy as np

from .config import EncoderConfig
from .params import router_key

__all__ = ["RoutingDecision", "route"]


@dataclass
class RoutingDecision:
    mode: str                      # expert mode axis: tag / gen / shared
    expert_ids: np.ndarray         # (B,) or (B, S)
    gates: np.ndarray              # same shape as expert_ids
    per_token: bool
    key: str | None = None         # router param key; None for task_id
    probs: np.ndarray | None = None    # (rows, E) softmax over candidates
    context: np.ndarray | None = None  # (rows, D) router inputs
    n_real: np.ndarray | None = None   # (B,) real-token counts (pooled routing)
    temperature: float = 1.0
    token_shape: tuple | None = None   # (B, S, D) for per-token routing

    def backward_gates(self, dgate: np.ndarray, mask: np.ndarray, params: dict, grads: dict):
        """Gradient of the gate path wrt router weights and the slot input.

        ``dgate`` is flat over router rows; the return value matches the slot
        input (B, S, D). Static routing contributes nothing.
        """
        if self.key is None:
            if self.per_token:
                b, s, d = self.token_shape
                return np.zeros((b, s, d), dtype=dgate.dtype)
            b = self.expert_ids.shape[0]
            s = mask.shape[1]
            d = params["embed.token"].shape[1]
            return np.zeros((b, s, d), dtype=dgate.dtype)

        top = self.expert_ids.reshape(-1)
        gates = self.gates.reshape(-1)
        onehot = np.zeros_like(self.probs)
        onehot[np.arange(len(top)), top] = 1.0
        dlogits = dgate[:, None] * gates[:, None] * (onehot - self.probs) / self.temperature

        w = params[f"{self.key}.w"]
        _acc(grads, f"{self.key}.w", self.context.T @ dlogits)
        _acc(grads, f"{self.key}.b", dlogits.sum(axis=0))
        dcontext = dlogits @ w.T
        if self.per_token:
            return dcontext.reshape(self.token_shape)
        dx = dcontext[:, None, :] * mask[:, :, None] / self.n_real[:, None, None]
        return dx


def _acc(grads, key, value):
    if key in grads:
        grads[key] += value
    else:
        grads[key] = value


def route(
    params: dict,
    layer: int,
    states: np.ndarray,
    mask: np.ndarray,
    intent: int,
    mode: str,
    config: EncoderConfig,
) -> RoutingDecision:
    expert_mode = "shared" if config.share_tag_gen else mode
    b, s, _d = states.shape
    if config.router == "task_id":
        return RoutingDecision(
            mode=expert_mode,
            expert_ids=np.full(b, intent, dtype=np.int64),
            gates=np.ones(b, dtype=states.dtype),
            per_token=False,
            token_shape=states.shape,
        )

    key = router_key(config, layer, intent)
    w, bias = params[f"{key}.w"], params[f"{key}.b"]
    per_token = config.routing_granularity == "token"
    if per_token:
        context = states.reshape(b * s, -1)
        n_real = None
    else:
        n_real = mask.sum(axis=1)
        context = (states * mask[:, :, None]).sum(axis=1) / n_real[:, None]

    logits = (context @ w + bias) / config.softmax_temperature
    logits = logits - logits.max(axis=1, keepdims=True)
    expd = np.exp(logits)
    probs = expd / expd.sum(axis=1, keepdims=True)
    top = probs.argmax(axis=1)
    gates = probs[np.arange(len(top)), top]
    shape = (b, s) if per_token else (b,)
    return RoutingDecision(
        mode=expert_mode,
        expert_ids=top.reshape(shape),
        gates=gates.reshape(shape).astype(states.dtype),
        per_token=per_token,
        key=key,
        probs=probs,
        context=context,
        n_real=n_real,
        temperature=config.softmax_temperature,
        token_shape=states.shape,
    )
