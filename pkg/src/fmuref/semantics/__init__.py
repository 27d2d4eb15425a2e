"""Executable possible-worlds model: stores, the state monad and the evaluator."""
from .evaluator import (
    EvalStuck,
    EvalTimeout,
    RunReport,
    apply,
    comp_of,
    eval_delay,
    evaluate,
    run_comp_report,
    run_program,
)
from .monad import (
    DanglingLocation,
    HeapTypingError,
    WorldMonotonicityError,
    checked,
    comp_bind,
    comp_delta,
    comp_get,
    comp_map,
    comp_new,
    comp_ret,
    comp_set,
    comp_step,
    comp_theta,
    run_comp,
)
from .store import EMPTY_HEAP, EMPTY_WORLD, Heap, World, fresh, world_leq
from .values import (
    UNIT,
    SemVal,
    VComp,
    VFold,
    VFun,
    VInt,
    VLoc,
    VPack,
    VPair,
    VTFun,
    VUnit,
    show_value,
    value_has_type,
)
