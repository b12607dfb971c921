"""
Schema Module
pydantic models for tangle, link and corpus files and for CLI run configuration
"""

from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, field_validator, model_validator

Label = Union[StrictInt, StrictStr]
# A boundary point name, a crossing index, or [crossing index, slot]
HeadSpec = Union[StrictStr, StrictInt, Tuple[StrictInt, StrictInt]]

COMMANDS = ('verify', 'build', 'pair', 'khovanov', 'compare', 'invariance', 'jones')


class TangleFile(BaseModel):
    """On-disk form of a 2-tangle (four endpoints) or closed link (no endpoints)"""

    model_config = ConfigDict(extra='forbid')

    name: Optional[str] = None
    description: Optional[str] = None
    endpoints: List[Label] = Field(default_factory=list)
    crossings: List[Tuple[Label, Label, Label, Label]] = Field(default_factory=list)
    loops: List[Label] = Field(default_factory=list)
    orientation: Optional[List[Tuple[Label, HeadSpec]]] = None
    basepoint: Optional[Label] = None

    @field_validator('endpoints')
    @classmethod
    def _endpoint_count(cls, value):
        if len(value) not in (0, 4):
            raise ValueError(f"endpoints must list 4 labels (or none for a closed link), got {len(value)}")
        return value


class CorpusPair(BaseModel):
    """Two diagrams related by a Reidemeister move"""

    model_config = ConfigDict(extra='forbid')

    move: Literal['R1', 'R2', 'R3']
    description: str = ''
    diagrams: List[TangleFile]

    @field_validator('diagrams')
    @classmethod
    def _exactly_two(cls, value):
        if len(value) != 2:
            raise ValueError(f"a corpus pair holds exactly two diagrams, got {len(value)}")
        return value


class RunConfig(BaseModel):
    """Validated command-line request"""

    model_config = ConfigDict(extra='forbid')

    command: Literal['verify', 'build', 'pair', 'khovanov', 'compare', 'invariance', 'jones']
    inputs: List[Path] = Field(default_factory=list)
    closure: Literal[0, 1] = 0
    relative: bool = False
    output_format: Literal['json', 'table'] = 'json'
    eliminate: bool = False
    emit_tables: bool = False
    threads: int = Field(default=4, ge=1)

    @model_validator(mode='after')
    def _inputs_present(self):
        if self.command != 'verify' and not self.inputs:
            raise ValueError(f"command '{self.command}' needs at least one input file")
        return self
