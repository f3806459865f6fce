from . import dataclasses

from .labeler import generate_labeler_serializer

__serializers__ = [
    "SweepRow", "CloneRow"
]

SweepRow = generate_labeler_serializer(
    name="SweepRow",
    klass=dataclasses.SweepRow,
    labels=[
        "pct",
        "trial",
        "correct",
        "total"
    ]
)

CloneRow = generate_labeler_serializer(
    name="CloneRow",
    klass=dataclasses.CloneRow,
    labels=[
        "pct",
        "condition",
        "trial",
        "correct",
        "total"
    ]
)
