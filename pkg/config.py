"""
Application Configuration
Centralized configuration for the pillowcase Khovanov toolkit
"""

import os
from pathlib import Path

# Application Info
APP_NAME = "pillowcase-kh"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = "Twisted-complex tangle invariants over the pillowcase category, checked against reduced Khovanov homology"

# Paths
BASE_DIR = Path(__file__).parent
SRC_DIR = BASE_DIR / "src"
LOGS_DIR = BASE_DIR / "logs"
DATA_DIR = BASE_DIR / "data"
TANGLES_DIR = DATA_DIR / "tangles"
LINKS_DIR = DATA_DIR / "links"
CORPUS_DIR = DATA_DIR / "corpus" / "pairs"

# Logging Settings
LOGGING = {
    'LEVEL': os.getenv('LOG_LEVEL', 'INFO'),
    'LOG_TO_FILE': os.getenv('PILLOWCASE_KH_LOG_FILE', '0') == '1',
    'LOG_TO_CONSOLE': True,
    'STRUCTURED_LOGGING': True,
    'MAX_LOG_SIZE_MB': 10,
    'LOG_BACKUP_COUNT': 5,
}

# Input Limits
LIMITS = {
    'MAX_FILE_SIZE_MB': 2,
    'ALLOWED_EXTENSIONS': ['.json'],
    'MAX_CROSSINGS': 12,
    'MAX_LABEL_LENGTH': 64,
}

# Diagram Conventions
CONVENTIONS = {
    # Crossing record (e1, e2, e3, e4) counterclockwise from an under edge.
    # 'left_turn': 0 joins e1-e2 and e3-e4, 1 joins e1-e4 and e2-e3.
    # 'right_turn': the two pairings swapped.
    'RESOLUTION_ZERO': os.getenv('PILLOWCASE_KH_RESOLUTION', 'left_turn'),
    'BOUNDARY_POINTS': ('1', 'i', '-1', '-i'),
    'EARRING_POINT': '1',
}

# Performance
PERFORMANCE = {
    'THREADS': int(os.getenv('PILLOWCASE_KH_THREADS', '4')),
}

# Verification toggles
VERIFICATION = {
    'BUILD_CHECKS': True,
    'PAIRING_AUDIT': True,
    'ELIMINATE_POSTCHECK': True,
}

# Output
OUTPUT = {
    'JSON_INDENT': 2,
    'DEFAULT_FORMAT': 'json',
}

# Environment-specific overrides
ENV = os.getenv('APP_ENV', 'development')

if ENV == 'production':
    LOGGING['LEVEL'] = 'WARNING'
elif ENV == 'testing':
    LOGGING['LEVEL'] = 'DEBUG'
    LIMITS['MAX_FILE_SIZE_MB'] = 1

# CLI exit codes
EXIT_CODES = {
    'OK': 0,
    'CHECK_FAILED': 1,
    'USAGE_ERROR': 2,
}


def resolution_pairs():
    """
    Slot pairings joined by the 0- and 1-resolutions of a crossing record.

    Returns:
        tuple: (zero_pairs, one_pairs), each a pair of slot pairs
    """
    left = ((0, 1), (2, 3))
    right = ((0, 3), (1, 2))
    if CONVENTIONS['RESOLUTION_ZERO'] == 'right_turn':
        return right, left
    return left, right
