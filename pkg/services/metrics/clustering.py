"""
Group fragmentation via Ward clustering of movement similarity

Two dissimilarities are supported: the simulation one mixes pairwise
alignment with median-normalized distance, the robot one multiplies
closeness (relative to the arena extent) with alignment.
"""

import logging

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform

from services.metrics.collective import pairwise_distances, unit_headings
from shared.errors import DegenerateInput
from shared.models import Arena

logger = logging.getLogger(__name__)

SIM_THRESHOLD = 0.275
ROBOT_THRESHOLD = 0.1653


def ward_clusters(dissimilarity: np.ndarray, threshold: float) -> np.ndarray:
    """Flat cluster labels (1-based) cutting a Ward dendrogram at `threshold`"""
    condensed = squareform(dissimilarity, checks=False)
    tree = linkage(condensed, method="ward")
    return fcluster(tree, t=threshold, criterion="distance")


def largest_cluster(labels: np.ndarray) -> int:
    return int(np.bincount(labels).max())


def pairwise_alignment(headings: np.ndarray) -> np.ndarray:
    """n_i . n_j for every pair"""
    units = unit_headings(headings)
    return units @ units.T


def sim_dissimilarity(
    positions: np.ndarray, headings: np.ndarray, arena: Arena | None = None
) -> np.ndarray:
    distances = pairwise_distances(positions, arena)
    normalized = np.abs(np.median(distances) - distances) / distances.max()
    # ||n_i + n_j|| / 2 == sqrt((1 + n_i . n_j) / 2)
    pair_polarization = np.sqrt(np.clip((1 + pairwise_alignment(headings)) / 2, 0.0, 1.0))
    dissimilarity = ((1 - pair_polarization) + normalized) / 2
    np.fill_diagonal(dissimilarity, 0.0)
    return dissimilarity


def cluster_sim(
    positions: np.ndarray,
    headings: np.ndarray,
    threshold: float = SIM_THRESHOLD,
    arena: Arena | None = None,
) -> tuple[np.ndarray, int]:
    """Cluster labels and the size of the largest polarized, cohesive subgroup"""
    positions = np.asarray(positions, dtype=np.float64)
    n_agents = positions.shape[0]
    if n_agents < 2:
        raise DegenerateInput("clustering needs at least two agents")
    if pairwise_distances(positions, arena).max() == 0.0:
        logger.warning("All agents coincident, reporting a single cluster")
        return np.ones(n_agents, dtype=np.int32), n_agents

    labels = ward_clusters(sim_dissimilarity(positions, headings, arena), threshold)
    return labels, largest_cluster(labels)


def trajectory_extent(positions: np.ndarray) -> float:
    """Diagonal of the bounding box of every position ever visited"""
    points = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    spans = points.max(axis=0) - points.min(axis=0)
    return float(np.hypot(spans[0], spans[1]))


def robot_dissimilarity(positions: np.ndarray, headings: np.ndarray, r_max: float) -> np.ndarray:
    closeness = np.clip(1 - pairwise_distances(positions) / r_max, 0.0, 1.0)
    alignment = (pairwise_alignment(headings) + 1) / 2
    dissimilarity = 1 - np.sqrt(np.clip(closeness * alignment, 0.0, 1.0))
    np.fill_diagonal(dissimilarity, 0.0)
    return dissimilarity


def cluster_robot(
    positions: np.ndarray,
    headings: np.ndarray,
    r_max: float,
    threshold: float = ROBOT_THRESHOLD,
) -> tuple[np.ndarray, int]:
    """Robot-data variant: r_max is the extent of the whole trajectory"""
    if r_max <= 0:
        raise DegenerateInput("trajectory extent must be positive")
    labels = ward_clusters(robot_dissimilarity(positions, headings, r_max), threshold)
    return labels, largest_cluster(labels)
