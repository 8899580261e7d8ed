from cli.utils.errors import fail, handle_errors
from cli.utils.io import distribution_document, read_json, trajectory_frame, write_csv, write_json
from cli.utils.options import OptionResolver, build_task, load_run_config, model_params, parameter_name

__all__ = [
    "OptionResolver",
    "build_task",
    "distribution_document",
    "fail",
    "handle_errors",
    "load_run_config",
    "model_params",
    "parameter_name",
    "read_json",
    "trajectory_frame",
    "write_csv",
    "write_json",
]
