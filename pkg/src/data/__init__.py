from src.data.corpus import (
    CORPUS_COLUMNS,
    RawTrial,
    condition_name,
    group_by_condition,
    load_corpus,
    parse_condition,
    register_corpus_format,
    trials_frame,
    write_corpus,
)
from src.data.filters import reference_acceleration
from src.data.preprocessing import (
    OutlierRemoval,
    PreprocessReport,
    TrajectoryEnsemble,
    extend_and_align,
    forward_velocity,
    movement_onset,
    preprocess,
    remove_outliers,
    strip_reaction_time,
)
from src.data.synthetic import synthesize_corpus

__all__ = [
    "CORPUS_COLUMNS",
    "OutlierRemoval",
    "PreprocessReport",
    "RawTrial",
    "TrajectoryEnsemble",
    "condition_name",
    "extend_and_align",
    "forward_velocity",
    "group_by_condition",
    "load_corpus",
    "movement_onset",
    "parse_condition",
    "preprocess",
    "reference_acceleration",
    "register_corpus_format",
    "remove_outliers",
    "strip_reaction_time",
    "synthesize_corpus",
    "trials_frame",
    "write_corpus",
]
