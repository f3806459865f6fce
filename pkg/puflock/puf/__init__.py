from .backend import PufBackend, Challenge, KEY_BITS

from .xor_arbiter import XorArbiterPuf, puf_new, parity_features

from .crp_table import CrpTablePuf, save_crp_table, load_crp_table

from .metrics import uniqueness, uniqueness_over_pairs, balance, reliability
