from .network import ForwardTrace, LayerTrace, NetworkDims, PtRbfLayer, PtRbfNetwork
from .gradients import Gradients, LayerGradients
from .dataset import AxisStats, Dataset, DatasetMeta, NormStats
from .run_record import RunRecord
from .moment_report import ConventionCheck, MomentEstimate, MomentReport

__all__ = [
    "ForwardTrace",
    "LayerTrace",
    "NetworkDims",
    "PtRbfLayer",
    "PtRbfNetwork",
    "Gradients",
    "LayerGradients",
    "AxisStats",
    "Dataset",
    "DatasetMeta",
    "NormStats",
    "RunRecord",
    "ConventionCheck",
    "MomentEstimate",
    "MomentReport",
]
