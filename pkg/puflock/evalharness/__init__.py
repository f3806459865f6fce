from ._event_emitter import HarnessEventEmitter

from .baseline import random_baseline, dataset_baseline

from .report import \
    SweepReport, CloneReport, summarize, \
    report_csv, report_json, load_report_json, \
    parse_report

from .sweep import degradation_sweep, trial_seed, trial_selections

from .clone import clone_eval
