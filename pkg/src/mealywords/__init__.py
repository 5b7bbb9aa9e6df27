"""Mealy machines acting on infinite words, with an exact algebra of
ultimately periodic words."""
from .words import (FiniteWord, Occurrence, UPWord, WordStream, canonical_words, expand, factor,
                    gen_example_one, gen_thue_morse, index, merge_z, minimal_period, normalize_up,
                    occurrences, shift_up, up_equals)
from .machine import (MachineValidationError, MealyMachine, NotAptError, RunResult, apt,
                      enumerate_machines, find_transducer, run, series, transform_stream,
                      transform_up, validate)
from .complexity import (ComplexityProfile, GrowthProfile, big_o_witness, check_quotient_bound,
                         complexity_prefix, complexity_up, growth)
from .wordspec import parse_word

__version__ = "0.1.0"
