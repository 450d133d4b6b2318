"""Collective metrics: order, spacing, shape, fragmentation and overlap"""

from services.metrics.clustering import (
    ROBOT_THRESHOLD,
    SIM_THRESHOLD,
    cluster_robot,
    cluster_sim,
    trajectory_extent,
    ward_clusters,
)
from services.metrics.collective import (
    avoidance_ratio,
    mean_iid,
    overlap_flags,
    overlap_ratio,
    pairwise_distances,
    polarization,
)
from services.metrics.pipeline import (
    Clustering,
    compute_record,
    metrics_frame,
    metrics_records,
    summarize,
    summarize_trajectory,
)
from services.metrics.shape import circularity, unwrap_positions

__all__ = [
    "ROBOT_THRESHOLD",
    "SIM_THRESHOLD",
    "Clustering",
    "avoidance_ratio",
    "circularity",
    "cluster_robot",
    "cluster_sim",
    "compute_record",
    "mean_iid",
    "metrics_frame",
    "metrics_records",
    "overlap_flags",
    "overlap_ratio",
    "pairwise_distances",
    "polarization",
    "summarize",
    "summarize_trajectory",
    "trajectory_extent",
    "unwrap_positions",
    "ward_clusters",
]
