"""Model checking for ceteris paribus counterfactual logic over finite sphere models."""
from .formula import (FALSE, TRUE, Atom, CpCounterfactual, CpPlausibility, CpSet, Falsum,
                      Implies, ParseError, cpl, dual, is_paired, parse, rewrite_cf_to_pl,
                      rewrite_pl_to_cf, to_text)
from .model import (Centering, ModelError, SphereModel, load_model, save_model, validate)
from .update import UpdateTag, update, update_trace
from .evaluate import Evaluator, NotPairedError, sat, sat_variant, valid_in_model
from .weights import Ordering, cmp_lex, cmp_significance, cmp_xel, weight_of_formula, weight_of_set
from .cpsets import forcing_complement, maximal_cp_set, paired_subsets, profile
from .kernels import BACKEND

__version__ = "0.1.0"
