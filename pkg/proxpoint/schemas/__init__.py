"""
Schemas package - pydantic schema untuk validasi dan serialisasi config

File ini mengumpulkan semua schema dari file terpisah.
Contoh: from proxpoint.schemas import ExperimentConfig, OperatorSchema
"""

from .experiment import EstimationSchema, ExperimentConfig, ProblemSchema, ScheduleSchema, VerificationSchema
from .operators import OperatorSchema
from .sets import SetSchema

# List semua schema yang bisa di-import
__all__ = [
    # Experiment
    "ExperimentConfig",
    "ProblemSchema",
    "ScheduleSchema",
    "EstimationSchema",
    "VerificationSchema",

    # Building blocks
    "OperatorSchema",
    "SetSchema",
]
