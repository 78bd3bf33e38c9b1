"""Sparse-expert transformer encoder with tagging and mask-infilling heads."""

from .batch import Batch
from .checkpoint import load_checkpoint, save_checkpoint
from .config import EncoderConfig
from .data import build_pools, encode_generation, encode_tagging
from .encoder import backward, forward, loss_and_grads
from .gradcheck import gradcheck
from .inference import EditModel, edit_iterative, predict_edit
from .losses import generation_loss, tagging_loss
from .params import (
    clone_expert,
    expert_flat_index,
    freeze_for_finetune,
    init_params,
)
from .routing import route
from .training import TrainState, schedule_next, train_model, train_step
from .vocab import Vocabulary, build_vocab

__all__ = [
    "Batch", "EncoderConfig", "Vocabulary", "build_vocab",
    "init_params", "expert_flat_index", "clone_expert", "freeze_for_finetune",
    "forward", "backward", "loss_and_grads", "route",
    "tagging_loss", "generation_loss",
    "TrainState", "schedule_next", "train_step", "train_model",
    "build_pools", "encode_tagging", "encode_generation",
    "gradcheck", "EditModel", "predict_edit", "edit_iterative",
    "save_checkpoint", "load_checkpoint",
]
