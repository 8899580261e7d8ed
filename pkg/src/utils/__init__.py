from src.utils.linalg import as_matrix, as_vector, clamp_psd, psd_pinv, psd_sqrt, symmetrize
from src.utils.logging_config import logger, setup_logger

__all__ = ["logger", "setup_logger", "as_matrix", "as_vector", "clamp_psd", "psd_pinv", "psd_sqrt", "symmetrize"]
