"""Query interpretation, deferred edits and patch rendering."""
from .edits import ActionError, Edit, Origin, OverlapError, execute_actions, fold_guards, materialize, \
    remove_satisfied_units
from .evaluate import EvalError, TriggerResult, check_encoding, eval_query
from .patch import Patch, render_patch
from .pipeline import RunOptions, RunOutcome, RunReport, evaluate_all, run_pipeline, write_outputs

__all__ = [
    "ActionError", "Edit", "Origin", "OverlapError", "execute_actions", "fold_guards", "materialize",
    "remove_satisfied_units", "EvalError", "TriggerResult", "check_encoding", "eval_query", "Patch",
    "render_patch", "RunOptions", "RunOutcome", "RunReport", "evaluate_all", "run_pipeline", "write_outputs",
]
