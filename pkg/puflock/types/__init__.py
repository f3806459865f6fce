from .dataclasses import \
    PufConfig, TrainConfig, SweepConfig, \
    SweepRow, CloneRow, Summary, \
    DEFAULT_PERCENTAGES, MAX_STAGES, SelectionMode

#pylint: disable-next=unused-import
from .labeler import _Serializer, generate_labeler_serializer
