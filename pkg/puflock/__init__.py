from ._version import __version__

from .puf import \
    PufBackend, XorArbiterPuf, CrpTablePuf, \
    puf_new

from .model import \
    Model, DenseLayer, Dataset, \
    forward, predict, evaluate, \
    train, load_model, save_model

from .binding import \
    HelperData, encrypt_model, encrypt_layers, \
    decrypt_model, rebind, redeploy, \
    load_helper, save_helper

from .evalharness import degradation_sweep, clone_eval

from .types import PufConfig, TrainConfig, SweepConfig
