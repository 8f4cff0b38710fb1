# -*- coding: utf-8 -*-
##
# This file is part of the anchorsim toolkit
##
import os


def _env_flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


DEBUG = _env_flag("ANCHORSIM_DEBUG", "false")
LOG_FILE = os.getenv("ANCHORSIM_LOG_FILE") or None

# Largest explicit ball materialised by graph.core.common.ball
BALL_VERTEX_BUDGET = int(os.getenv("ANCHORSIM_BALL_VERTEX_BUDGET", "2000000"))

# Vertex budget for materialised Galton-Watson trees
GW_TRUNCATION_BUDGET = int(os.getenv("ANCHORSIM_GW_TRUNCATION_BUDGET", "1000000"))

# Upper estimate of connected sets an enumeration may visit
ENUMERATION_BUDGET = int(os.getenv("ANCHORSIM_ENUMERATION_BUDGET", "500000000"))

# Exploration budget used to decide whether a walk starts in an infinite cluster
CLUSTER_GROWTH_BUDGET = int(os.getenv("ANCHORSIM_CLUSTER_GROWTH_BUDGET", "2000"))

# Default step cap for exit-before-return trials
WALK_STEP_CAP = int(os.getenv("ANCHORSIM_WALK_STEP_CAP", "10000000"))

# Resampling attempts before a walk trial gives up on finding an infinite cluster
MAX_START_RESAMPLES = int(os.getenv("ANCHORSIM_MAX_START_RESAMPLES", "1000"))

DEFAULT_TOLERANCE = float(os.getenv("ANCHORSIM_DEFAULT_TOLERANCE", "1e-12"))

# Changing the trial-seed derivation is a breaking change: bump this.
SEED_DERIVATION_VERSION = 1
