"""Random-matrix landscape analysis and network weight initialization.

The package tabulates the Tracy-Widom F1 distribution from the
Hastings-McLeod solution of Painleve II, evaluates the mean-minima
count of the quadratically-confined random landscape, and turns the
per-class maximizers of the count integrand into initial weights for
small sigmoid classifiers, benchmarked against Nguyen-Widrow and
Xavier initialization.
"""

from .airy import airy_ai, airy_ai_both, airy_ai_prime
from .data import (LabeledDataset, PcaBasis, dataset_from_csv, dataset_to_csv,
                   fit_pca, load_directory, project, restrict_classes, split,
                   standardize, standardizer_stats, synth_generate)
from .landscape import (FieldSpec, LandscapeSpec, MinimaCount,
                        count_minima_bruteforce, estimate_mu_c, h_curve, h_n,
                        i_n_windowed, mean_minima, sample_gaussian_field)
from .network import (Network, StopRule, TrainReport, evaluate, forward,
                      gradient, mse_error, nguyen_widrow_init, one_hot,
                      sigmoid, train, xavier_init)
from .rmt import (GoeSample, PainleveSolution, ZnEstimate, edge_rescale,
                  hastings_mcleod, load_table, log_f1_prime, max_eigenvalues,
                  p_lambda_max, painleve_table, sample_goe, sample_goe_batch,
                  save_table, semicircle_density, solve_painleve_ii,
                  tracy_widom_f1, z_n_bruteforce)
from .rmt_init import (InitConfig, InitPlan, KmeansResult, LayerInit,
                       compute_class_u, draw_u_from_hypercube, init_layer,
                       init_network, kmeans, saturation_curve, select_mu_ratio,
                       u_to_weights)
from .seeds import derive_seed

__version__ = "0.1.0"

__all__ = [
    "airy_ai", "airy_ai_prime", "airy_ai_both",
    "GoeSample", "sample_goe", "sample_goe_batch", "max_eigenvalues",
    "semicircle_density", "edge_rescale", "PainleveSolution",
    "solve_painleve_ii", "painleve_table", "save_table", "load_table",
    "tracy_widom_f1", "hastings_mcleod", "log_f1_prime", "p_lambda_max",
    "ZnEstimate", "z_n_bruteforce",
    "LandscapeSpec", "MinimaCount", "h_curve", "h_n", "i_n_windowed",
    "mean_minima", "estimate_mu_c", "FieldSpec", "sample_gaussian_field",
    "count_minima_bruteforce",
    "InitConfig", "InitPlan", "LayerInit", "KmeansResult", "select_mu_ratio",
    "saturation_curve", "compute_class_u", "draw_u_from_hypercube",
    "u_to_weights", "kmeans", "init_layer", "init_network",
    "Network", "TrainReport", "StopRule", "sigmoid", "forward", "one_hot",
    "mse_error", "gradient", "train", "nguyen_widrow_init", "xavier_init",
    "evaluate",
    "LabeledDataset", "PcaBasis", "load_directory", "dataset_to_csv",
    "dataset_from_csv", "fit_pca", "project", "standardize",
    "standardizer_stats", "synth_generate", "split", "restrict_classes",
    "derive_seed",
    "__version__",
]
