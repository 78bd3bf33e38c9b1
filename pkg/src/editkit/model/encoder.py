"""Hand-differentiated transformer encoder with sparse expert slots.

Forward returns hidden states and head logits; the backward pass mirrors every
forward primitive and accumulates gradients into a name-keyed dict. Only
tensors on the batch's compute path appear in that dict; the public
:func:`backward` fills exact zeros for everything else (non-selected experts
in particular).
"""

import math

import numpy as np

from ..errors import NonFiniteGradient
from .batch import Batch
from .config import EncoderConfig
from .params import expert_prefix, head_key, sparse_layers
from .routing import route
from .losses import cross_entropy_with_grad

__all__ = ["forward", "backward", "loss_and_grads"]

_GELU_C = math.sqrt(2.0 / math.pi)
_GELU_A = 0.044715


def _gelu(x):
    inner = _GELU_C * (x + _GELU_A * x ** 3)
    return 0.5 * x * (1.0 + np.tanh(inner))


def _gelu_grad(x):
    inner = _GELU_C * (x + _GELU_A * x ** 3)
    t = np.tanh(inner)
    return 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * _GELU_C * (1.0 + 3.0 * _GELU_A * x * x)


def _linear_bwd(dy, x, w, grads, wkey, bkey):
    dy2 = dy.reshape(-1, dy.shape[-1])
    x2 = x.reshape(-1, x.shape[-1])
    _accum(grads, wkey, x2.T @ dy2)
    _accum(grads, bkey, dy2.sum(axis=0))
    return dy @ w.T


def _accum(grads, key, value):
    if key in grads:
        grads[key] += value
    else:
        grads[key] = value


_LN_EPS = 1e-5


def _layernorm_fwd(x, g, b):
    mu = x.mean(axis=-1, keepdims=True)
    xc = x - mu
    var = (xc * xc).mean(axis=-1, keepdims=True)
    inv = 1.0 / np.sqrt(var + _LN_EPS)
    xhat = xc * inv
    return g * xhat + b, (xhat, inv)


def _layernorm_bwd(dy, cache, g, grads, gkey, bkey):
    xhat, inv = cache
    axes = tuple(range(dy.ndim - 1))
    _accum(grads, gkey, (dy * xhat).sum(axis=axes))
    _accum(grads, bkey, dy.sum(axis=axes))
    dxhat = dy * g
    mean1 = dxhat.mean(axis=-1, keepdims=True)
    mean2 = (dxhat * xhat).mean(axis=-1, keepdims=True)
    return inv * (dxhat - mean1 - xhat * mean2)


def _attention_fwd(x, mask, params, prefix, config):
    b, s, d = x.shape
    h, dh = config.num_heads, config.head_dim
    q = x @ params[f"{prefix}.wq"] + params[f"{prefix}.bq"]
    k = x @ params[f"{prefix}.wk"] + params[f"{prefix}.bk"]
    v = x @ params[f"{prefix}.wv"] + params[f"{prefix}.bv"]

    def split(t):
        return t.reshape(b, s, h, dh).transpose(0, 2, 1, 3)

    qh, kh, vh = split(q), split(k), split(v)
    scores = qh @ kh.transpose(0, 1, 3, 2) / math.sqrt(dh)
    scores = scores + (1.0 - mask[:, None, None, :]) * -1e9
    scores = scores - scores.max(axis=-1, keepdims=True)
    expd = np.exp(scores)
    probs = expd / expd.sum(axis=-1, keepdims=True)
    ctx = (probs @ vh).transpose(0, 2, 1, 3).reshape(b, s, d)
    out = ctx @ params[f"{prefix}.wo"] + params[f"{prefix}.bo"]
    return out, (x, qh, kh, vh, probs, ctx)


def _attention_bwd(dout, cache, params, prefix, config, grads):
    x, qh, kh, vh, probs, ctx = cache
    b, s, d = x.shape
    h, dh = config.num_heads, config.head_dim
    dctx = _linear_bwd(dout, ctx, params[f"{prefix}.wo"], grads, f"{prefix}.wo", f"{prefix}.bo")
    dctx = dctx.reshape(b, s, h, dh).transpose(0, 2, 1, 3)
    dprobs = dctx @ vh.transpose(0, 1, 3, 2)
    dvh = probs.transpose(0, 1, 3, 2) @ dctx
    dscores = (dprobs - (dprobs * probs).sum(axis=-1, keepdims=True)) * probs
    dscores = dscores / math.sqrt(dh)
    dqh = dscores @ kh
    dkh = dscores.transpose(0, 1, 3, 2) @ qh

    def merge(t):
        return t.transpose(0, 2, 1, 3).reshape(b, s, d)

    dx = _linear_bwd(merge(dqh), x, params[f"{prefix}.wq"], grads, f"{prefix}.wq", f"{prefix}.bq")
    dx += _linear_bwd(merge(dkh), x, params[f"{prefix}.wk"], grads, f"{prefix}.wk", f"{prefix}.bk")
    dx += _linear_bwd(merge(dvh), x, params[f"{prefix}.wv"], grads, f"{prefix}.wv", f"{prefix}.bv")
    return dx


def _ffn_fwd(x, params, prefix):
    h1 = x @ params[f"{prefix}.w1"] + params[f"{prefix}.b1"]
    act = _gelu(h1)
    out = act @ params[f"{prefix}.w2"] + params[f"{prefix}.b2"]
    return out, (x, h1, act)


def _ffn_bwd(dout, cache, params, prefix, grads):
    x, h1, act = cache
    dact = _linear_bwd(dout, act, params[f"{prefix}.w2"], grads, f"{prefix}.w2", f"{prefix}.b2")
    dh1 = dact * _gelu_grad(h1)
    return _linear_bwd(dh1, x, params[f"{prefix}.w1"], grads, f"{prefix}.w1", f"{prefix}.b1")


def _layer_core_fwd(x, mask, params, prefix, config):
    """Attention + post-norm + FFN + post-norm with the layer's own weights."""
    attn, attn_cache = _attention_fwd(x, mask, params, f"{prefix}.attn", config)
    h1, ln1_cache = _layernorm_fwd(x + attn, params[f"{prefix}.ln1.g"], params[f"{prefix}.ln1.b"])
    f, ffn_cache = _ffn_fwd(h1, params, f"{prefix}.ffn")
    h2, ln2_cache = _layernorm_fwd(h1 + f, params[f"{prefix}.ln2.g"], params[f"{prefix}.ln2.b"])
    return h2, (attn_cache, ln1_cache, ffn_cache, ln2_cache, h1)


def _layer_core_bwd(dh2, cache, params, prefix, config, grads):
    attn_cache, ln1_cache, ffn_cache, ln2_cache, _h1 = cache
    dsum = _layernorm_bwd(
        dh2, ln2_cache, params[f"{prefix}.ln2.g"], grads, f"{prefix}.ln2.g", f"{prefix}.ln2.b"
    )
    dh1 = dsum + _ffn_bwd(dsum, ffn_cache, params, f"{prefix}.ffn", grads)
    dres = _layernorm_bwd(
        dh1, ln1_cache, params[f"{prefix}.ln1.g"], grads, f"{prefix}.ln1.g", f"{prefix}.ln1.b"
    )
    dx = dres + _attention_bwd(dres, attn_cache, params, f"{prefix}.attn", config, grads)
    return dx


def _routed_ffn_fwd(h1, mask, params, layer, batch, config):
    decision = route(params, layer, h1, mask, batch.intent, batch.mode, config)
    b, s, d = h1.shape
    raw = np.zeros_like(h1)
    expert_caches = []
    if decision.per_token:
        flat = h1.reshape(b * s, d)
        ids = decision.expert_ids.reshape(-1)
        for e in np.unique(ids):
            rows = np.flatnonzero(ids == e)
            prefix = f"{expert_prefix(layer, decision.mode, int(e))}.ffn"
            y, cache = _ffn_fwd(flat[rows], params, prefix)
            raw.reshape(b * s, d)[rows] = y
            expert_caches.append((int(e), rows, cache))
        out = raw * decision.gates.reshape(b, s)[..., None]
    else:
        for e in np.unique(decision.expert_ids):
            rows = np.flatnonzero(decision.expert_ids == e)
            prefix = f"{expert_prefix(layer, decision.mode, int(e))}.ffn"
            y, cache = _ffn_fwd(h1[rows], params, prefix)
            raw[rows] = y
            expert_caches.append((int(e), rows, cache))
        out = raw * decision.gates[:, None, None]
    return out, (decision, expert_caches, raw)


def _routed_ffn_bwd(dout, cache, h1_shape, mask, params, layer, config, grads):
    decision, expert_caches, raw = cache
    b, s, d = h1_shape
    dh1 = np.zeros(h1_shape, dtype=dout.dtype)
    if decision.per_token:
        gates = decision.gates.reshape(b, s)[..., None]
        dexpert_out = dout * gates
        dgate = (dout * raw).sum(axis=-1).reshape(-1)
        flat_dh1 = dh1.reshape(b * s, d)
        dflat = dexpert_out.reshape(b * s, d)
        for e, rows, ffn_cache in expert_caches:
            prefix = f"{expert_prefix(layer, decision.mode, e)}.ffn"
            flat_dh1[rows] += _ffn_bwd(dflat[rows], ffn_cache, params, prefix, grads)
        dh1 += decision.backward_gates(dgate, mask, params, grads).reshape(b, s, d)
    else:
        dexpert_out = dout * decision.gates[:, None, None]
        dgate = (dout * raw).sum(axis=(1, 2))
        for e, rows, ffn_cache in expert_caches:
            prefix = f"{expert_prefix(layer, decision.mode, e)}.ffn"
            dh1[rows] += _ffn_bwd(dexpert_out[rows], ffn_cache, params, prefix, grads)
        dh1 += decision.backward_gates(dgate, mask, params, grads)
    return dh1


def _forward_core(config: EncoderConfig, params: dict, batch: Batch):
    batch.validate(config)
    ids = batch.token_ids
    b, s = ids.shape
    mask = batch.attn_mask.astype(params["embed.token"].dtype)
    x = params["embed.token"][ids] + params["embed.pos"][:s][None, :, :]
    caches: list = [("embed", ids)]
    slot_set = set(sparse_layers(config))

    for layer in range(config.num_layers):
        if config.sparsity_mode == "sparse_ffn" and layer in slot_set:
            prefix = f"layer{layer}"
            attn, attn_cache = _attention_fwd(x, mask, params, f"{prefix}.attn", config)
            h1, ln1_cache = _layernorm_fwd(
                x + attn, params[f"{prefix}.ln1.g"], params[f"{prefix}.ln1.b"]
            )
            f, slot_cache = _routed_ffn_fwd(h1, mask, params, layer, batch, config)
            h2, ln2_cache = _layernorm_fwd(
                h1 + f, params[f"{prefix}.ln2.g"], params[f"{prefix}.ln2.b"]
            )
            caches.append(("sparse_ffn", layer, x, attn_cache, ln1_cache, slot_cache, ln2_cache, h1.shape))
            x = h2
        elif config.sparsity_mode == "sparse_last_layer" and layer in slot_set:
            decision = route(params, layer, x, mask, batch.intent, batch.mode, config)
            raw = np.zeros_like(x)
            expert_caches = []
            if decision.per_token:
                for e in np.unique(decision.expert_ids):
                    prefix = expert_prefix(layer, decision.mode, int(e))
                    y, cache = _layer_core_fwd(x, mask, params, prefix, config)
                    sel = decision.expert_ids == e
                    raw[sel] = y[sel]
                    expert_caches.append((int(e), sel, cache))
                out = raw * decision.gates[..., None]
            else:
                for e in np.unique(decision.expert_ids):
                    rows = np.flatnonzero(decision.expert_ids == e)
                    prefix = expert_prefix(layer, decision.mode, int(e))
                    y, cache = _layer_core_fwd(x[rows], mask[rows], params, prefix, config)
                    raw[rows] = y
                    expert_caches.append((int(e), rows, cache))
                out = raw * decision.gates[:, None, None]
            caches.append(("sparse_layer", layer, x, decision, expert_caches, raw))
            x = out
        else:
            x, layer_cache = _layer_core_fwd(x, mask, params, f"layer{layer}", config)
            caches.append(("dense_layer", layer, layer_cache))

    hkey = head_key(config, batch.mode, batch.intent)
    logits = x @ params[f"{hkey}.w"] + params[f"{hkey}.b"]
    caches.append(("head", hkey, x))
    return x, logits, caches, mask


def forward(config: EncoderConfig, params: dict, batch: Batch):
    """Hidden states plus tag or vocabulary logits for the batch's mode."""
    hidden, logits, _caches, _mask = _forward_core(config, params, batch)
    return hidden, logits


def _backward_core(config, params, batch, caches, mask, dlogits):
    grads: dict = {}
    head_tag, hkey, head_in = caches[-1]
    assert head_tag == "head"
    dx = _linear_bwd(dlogits, head_in, params[f"{hkey}.w"], grads, f"{hkey}.w", f"{hkey}.b")

    for entry in reversed(caches[1:-1]):
        kind = entry[0]
        if kind == "dense_layer":
            _, layer, layer_cache = entry
            dx = _layer_core_bwd(dx, layer_cache, params, f"layer{layer}", config, grads)
        elif kind == "sparse_ffn":
            _, layer, x_in, attn_cache, ln1_cache, slot_cache, ln2_cache, h1_shape = entry
            prefix = f"layer{layer}"
            dsum = _layernorm_bwd(
                dx, ln2_cache, params[f"{prefix}.ln2.g"], grads,
                f"{prefix}.ln2.g", f"{prefix}.ln2.b",
            )
            dh1 = dsum + _routed_ffn_bwd(dsum, slot_cache, h1_shape, mask, params, layer, config, grads)
            dres = _layernorm_bwd(
                dh1, ln1_cache, params[f"{prefix}.ln1.g"], grads,
                f"{prefix}.ln1.g", f"{prefix}.ln1.b",
            )
            dx = dres + _attention_bwd(dres, attn_cache, params, f"{prefix}.attn", config, grads)
        elif kind == "sparse_layer":
            _, layer, x_in, decision, expert_caches, raw = entry
            if decision.per_token:
                dexpert = dx * decision.gates[..., None]
                dgate = (dx * raw).sum(axis=-1).reshape(-1)
                dx_next = np.zeros_like(dx)
                for e, sel, cache in expert_caches:
                    prefix = expert_prefix(layer, decision.mode, e)
                    masked = np.where(sel[..., None], dexpert, 0.0)
                    dx_next += _layer_core_bwd(masked, cache, params, prefix, config, grads)
                dx_next += decision.backward_gates(dgate, mask, params, grads).reshape(dx.shape)
                dx = dx_next
            else:
                dexpert = dx * decision.gates[:, None, None]
                dgate = (dx * raw).sum(axis=(1, 2))
                dx_next = np.zeros_like(dx)
                for e, rows, cache in expert_caches:
                    prefix = expert_prefix(layer, decision.mode, e)
                    dx_next[rows] = _layer_core_bwd(
                        dexpert[rows], cache, params, prefix, config, grads
                    )
                dx_next += decision.backward_gates(dgate, mask, params, grads)
                dx = dx_next
        else:
            raise AssertionError(kind)

    _embed_tag, ids = caches[0]
    d_tok = np.zeros_like(params["embed.token"])
    np.add.at(d_tok, ids, dx)
    grads["embed.token"] = d_tok
    d_pos = np.zeros_like(params["embed.pos"])
    d_pos[: ids.shape[1]] = dx.sum(axis=0)
    grads["embed.pos"] = d_pos
    return grads


def loss_and_grads(config: EncoderConfig, params: dict, batch: Batch):
    """Mode loss (generation scaled by lambda) and compute-path gradients."""
    _hidden, logits, caches, mask = _forward_core(config, params, batch)
    loss, dlogits = cross_entropy_with_grad(logits, batch.labels)
    if batch.mode == "gen":
        loss = loss * config.lambda_generation
        dlogits = dlogits * config.lambda_generation
    grads = _backward_core(config, params, batch, caches, mask, dlogits)
    return loss, grads


def backward(config: EncoderConfig, params: dict, batch: Batch) -> dict:
    """Gradients for every tensor; non-selected experts get exact zeros."""
    _loss, grads = loss_and_grads(config, params, batch)
    for name, value in params.items():
        if name not in grads:
            grads[name] = np.zeros_like(value)
        elif not np.isfinite(grads[name]).all():
            raise NonFiniteGradient(name)
    return grads
