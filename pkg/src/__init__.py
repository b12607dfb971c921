"""
Pillowcase Khovanov Toolkit
Source Package Initialization
"""

__version__ = "1.0.0"

# Import main entry points for easier access
from .tangle import TangleDiagram, LinkDiagram, parse_tangle, parse_link, close
from .twisted import TwistedComplex, deloop, eliminate_all
from .pairing import RankTable, pair, cohomology, reduce, jones
from .khovanov_oracle import reduced_khovanov, jones_from_bracket
from .logger import AppLogger, AuditLogger

__all__ = [
    'TangleDiagram',
    'LinkDiagram',
    'parse_tangle',
    'parse_link',
    'close',
    'TwistedComplex',
    'deloop',
    'eliminate_all',
    'RankTable',
    'pair',
    'cohomology',
    'reduce',
    'jones',
    'reduced_khovanov',
    'jones_from_bracket',
    'AppLogger',
    'AuditLogger',
]
