"""Comment-embedding clustering: SVD reduction, k-means++, intent labeling."""

from .embeddings import EmbeddingMatrix, hashed_bow_embed, load_embeddings
from .kmeans import ClusterModel, kmeans_fit, kmeans_pp_init
from .labeling import INTENT_NAMES, label_clusters, load_seed_prompts
from .pipeline import ClusterOutcome, cluster_pipeline, export_corpus
from .svd import SvdModel, truncated_svd

__all__ = [
    "EmbeddingMatrix", "hashed_bow_embed", "load_embeddings",
    "ClusterModel", "kmeans_fit", "kmeans_pp_init",
    "INTENT_NAMES", "label_clusters", "load_seed_prompts",
    "ClusterOutcome", "cluster_pipeline", "export_corpus",
    "SvdModel", "truncated_svd",
]
