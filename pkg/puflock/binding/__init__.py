from .selection import \
    WeightSelection, choose_weights, select_weights, \
    permutation_prefix, selection_count

from .helper_file import \
    HelperData, save_helper, load_helper, \
    encode_helper, decode_helper, HEADER_SIZE, \
    ENTRY_SIZE

from .cipher import \
    CipherBits, encrypt_weight, draw_challenge_seeds, \
    encrypt_weights, encrypt_model, encrypt_layers, \
    decrypt_model, rebind, redeploy
