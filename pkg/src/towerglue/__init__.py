"""Balance and rigidity of saddle tower configurations on flat tori."""

from .configuration import Configuration, assemble, full_report
from .errors import InvalidInput, NumericalFailure, TowerGlueError
from .rotation_graph import RotationGraph
from .saddle_tower import SaddleTower
from .torus_rep import TorusRep, embedded_graph

__version__ = "0.1.0"

__all__ = [
    "Configuration", "assemble", "full_report", "InvalidInput", "NumericalFailure",
    "TowerGlueError", "RotationGraph", "SaddleTower", "TorusRep", "embedded_graph",
]
