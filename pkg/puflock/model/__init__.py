from .network import \
    Activation, DenseLayer, Model, \
    forward, forward_batch, predict, \
    predict_batch, argmax_logits, count_correct, \
    evaluate

from .datasets import \
    Dataset, gen_synthetic, stratified_split, \
    save_dataset, load_dataset

from .idx import load_idx

from .model_file import save_model, load_model, encode_model, decode_model

from .training import train, init_parameters, loss_and_gradients, to_model
