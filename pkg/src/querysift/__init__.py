"""Disentangle genuine search queries from TrackMeNot-style noise.

Queries are compared with a semantic dissimilarity, clustered with PAM
(k chosen by silhouette), and the largest cluster(s) are labeled as the
user's own queries.
"""
from .classify import LargestClusterAttack, classify_largest, evaluate
from .clustering import Clustering, KMedoids, SilhouetteKMedoids, pam, select_k, silhouette
from .corpus import build_cooccurrence_model, build_document_index, hit_count, word_similarity
from .ingest import Label, LabeledDataset, QueryRecord, collate, parse_query_log, parse_tmn_log
from .similarity import (
    DistributionalDissimilarity,
    NGDDissimilarity,
    Query,
    build_matrix,
    ngd,
    phrase_sim,
    phrase_sim_directed,
)
from .simulator import SimulatorConfig, TopicPool, UserSession, simulate

__version__ = "0.1.0"
