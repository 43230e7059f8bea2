"""Ext-algebras, Nakayama automorphisms and homological determinants of graded algebras."""

from .field import QQ, Field
from .presentation import AlgebraPresentation, AutomorphismSpec, PresentationError, parse_presentation, format_presentation
from .groebner import compute_gb
from .resolution import minimal_resolution, gorenstein_signature, betti_table
from .extalgebra import ext_algebra
from .frobenius import frobenius_form, nakayama_of_E
from .nakayama import lift_automorphism, f_sigma, hdet, recover_mu_A
from .twist import TwistSpec, graded_twist
from .report import run_pipeline, emit_report

__version__ = "0.1.0"
