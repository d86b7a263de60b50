"""Three-way satirical-tweet classification.

Semantic inconsistency features from annotated tweets, natural-breaks
discretization, exact-probability equivalence classes, and decision
thresholds learned as the repeated equilibrium of an accuracy-vs-coverage
game.
"""

from .embeddings import EmbeddingError, EmbeddingTable, cosine, load_embeddings
from .features import (AnnotatedTweet, AnnotationError, FeatureRecord,
                       VocabularyScore, binarize_c_nern, build_vocabulary,
                       compute_b_voc, compute_corpus_mean, compute_s_nern,
                       compute_s_np, compute_s_qp, extract_features,
                       read_annotations, read_features_csv, write_features_csv)
from .game import (GameConfig, GameError, GameRound, GameTrace, PayoffCell,
                   StopReason, build_payoff_table, find_pure_nash,
                   render_trace_text, run_repetition, trace_to_json)
from .info_table import (EquivalenceClass, EquivalenceClassTable, InfoRow,
                         build_table, group_classes, merge_equal_probability)
from .jenks import (JenksBreaks, JenksError, assign_bin, fit_jenks,
                    within_class_ssd)
from .model import (Decision, Report, TrainedModel, Verdict, classify,
                    evaluate, model_from_json, model_to_json,
                    modified_accuracy, region_map)
from .rational import fraction_str, to_fraction
from .regions import (RegionError, ThresholdPair, Trisection, accuracy,
                      coverage, trisect)

__version__ = "0.1.0"
