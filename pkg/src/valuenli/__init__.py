"""valuenli: detect human values in arguments via textual entailment.

Argument premises are paired with definitional statements (harmonized
annotation instructions and survey items) as premise/hypothesis pairs; an
entailment scorer judges each pair, statement-level results are averaged
per value category, and a tuned threshold turns the averages into the 20
binary value labels.
"""

from valuenli.categories import CATEGORIES, CATEGORY_NAMES, NUM_CATEGORIES, ValueCategory
from valuenli.corpus import (
    Argument,
    DatasetSplit,
    Stance,
    ValueLabels,
    label_prevalence,
    parse_arguments,
    parse_labels,
    split_dataset,
)
from valuenli.statements import (
    DefinitionalStatement,
    StatementBank,
    StatementSource,
    audit_counts,
    filter_by_source,
    load_statements,
    sample_statements,
)
from valuenli.augment import Gold, NliInstance, generate_pairs, pair_count, write_pairs
from valuenli.aggregate import (
    AggregationInput,
    AggregationMode,
    ThresholdConfig,
    aggregate_category,
    decide,
    predict_argument,
    tune_threshold,
)
from valuenli.metrics import (
    ConfusionCounts,
    MetricsReport,
    ReliabilityData,
    confusion,
    krippendorff_alpha,
    macro_f1_official,
    macro_f1_own,
    one_baseline,
    prf1,
)
from valuenli.scorer import (
    BaselineScorer,
    ExternalScorer,
    Scorer,
    TrainConfig,
    binarize,
    compute_label_weights,
    connect_external,
    train_baseline,
)

__version__ = "0.1.0"
