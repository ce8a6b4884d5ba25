"""Metric metadata: report keys, symbols, families and polarity."""
from dataclasses import dataclass
from typing import Dict, List

HIGHER_BETTER = 'higher-better'
LOWER_BETTER = 'lower-better'

# Families
RELEVANCE = 'region-relevance'
SIMILARITY = 'region-similarity'
REGION_DISTANCE = 'region-distance'
CONSISTENCY = 'consistency-information'
BOUNDARY_DISTANCE = 'boundary-distance'


@dataclass(frozen=True)
class MetricInfo:
    key: str
    symbol: str
    full_name: str
    direction: str
    family: str
    binary: bool
    general: bool


@dataclass(frozen=True)
class MetricPolarity:
    name: str
    direction: str


METRIC_CATALOG: List[MetricInfo] = [
    MetricInfo('tnr', 'TNR', 'True Negative Rate', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('tpr', 'TPR', 'True Positive Rate', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('plr', 'PLR', 'Positive Likelihood Ratio', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('nlr', 'NLR', 'Negative Likelihood Ratio', LOWER_BETTER, RELEVANCE, True, False),
    MetricInfo('fpr', 'FPR', 'False Positive Rate', LOWER_BETTER, RELEVANCE, True, False),
    MetricInfo('fnr', 'FNR', 'False Negative Rate', LOWER_BETTER, RELEVANCE, True, False),
    MetricInfo('precision', 'P', 'Precision', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('f_measure', 'F', 'F-measure', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('f1_conventional', 'F1', 'Conventional F1 score', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('xor', 'XOR', 'XOR', LOWER_BETTER, RELEVANCE, True, False),
    MetricInfo('accuracy', 'AC', 'Accuracy', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('error_probability', 'EP', 'Error Probability', LOWER_BETTER, RELEVANCE, True, False),
    MetricInfo('volumetric_distance', 'VD', 'Volumetric Distance', LOWER_BETTER, RELEVANCE, True, False),
    MetricInfo('volumetric_similarity', 'VS', 'Volumetric Similarity', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('auc', 'AUC', 'Area Under Curve', HIGHER_BETTER, RELEVANCE, True, False),
    MetricInfo('jaccard', 'JI', 'Jaccard Index', HIGHER_BETTER, SIMILARITY, True, False),
    MetricInfo('dice', 'Dice', 'Dice Coefficient', HIGHER_BETTER, SIMILARITY, True, False),
    MetricInfo('fmi', 'FMI', 'Fowlkes-Mallows Index', HIGHER_BETTER, SIMILARITY, True, False),
    MetricInfo('rand_index', 'RI', 'Rand Index', HIGHER_BETTER, REGION_DISTANCE, True, True),
    MetricInfo('pri', 'PRI', 'Probabilistic Rand Index', HIGHER_BETTER, REGION_DISTANCE, True, True),
    MetricInfo('npr', 'NPR', 'Normalized Probabilistic Rand Index', HIGHER_BETTER, REGION_DISTANCE, True, True),
    MetricInfo('mce', 'MCE', 'Misclassification Error', LOWER_BETTER, RELEVANCE, True, False),
    MetricInfo('error_rate', 'ER', 'Error Rate', LOWER_BETTER, RELEVANCE, True, True),
    MetricInfo('lce', 'LCE', 'Local Consistency Error', LOWER_BETTER, CONSISTENCY, True, True),
    MetricInfo('gce', 'GCE', 'Global Consistency Error', LOWER_BETTER, CONSISTENCY, True, True),
    MetricInfo('bce', 'BCE', 'Bidirectional Consistency Error', LOWER_BETTER, CONSISTENCY, True, True),
    MetricInfo('mutual_information', 'MI', 'Mutual Information', HIGHER_BETTER, CONSISTENCY, True, True),
    MetricInfo('voi', 'VOI', 'Variation of Information', LOWER_BETTER, CONSISTENCY, True, True),
    MetricInfo('nmi', 'NMI', 'Normalized Mutual Information', HIGHER_BETTER, CONSISTENCY, True, True),
    MetricInfo('hausdorff', 'HAUSD', 'Hausdorff Distance', LOWER_BETTER, BOUNDARY_DISTANCE, True, True),
    MetricInfo('masd', 'MASD', 'Mean Absolute Surface Distance', LOWER_BETTER, BOUNDARY_DISTANCE, True, True),
    MetricInfo('asd', 'ASD', 'Average Symmetric Surface Distance', LOWER_BETTER, BOUNDARY_DISTANCE, True, True),
    MetricInfo('nsd', 'NSD', 'Normalized Sum of Distances', LOWER_BETTER, REGION_DISTANCE, True, True),
    MetricInfo('bde', 'BDE', 'Boundary Displacement Error', LOWER_BETTER, BOUNDARY_DISTANCE, True, True),
    MetricInfo('hamming', 'HD', 'Hamming Distance', LOWER_BETTER, SIMILARITY, True, True),
    MetricInfo('boundary_hamming', 'BHD', 'Boundary Hamming Distance', LOWER_BETTER, BOUNDARY_DISTANCE, True, True),
]

_BY_NAME: Dict[str, MetricInfo] = {}
for _info in METRIC_CATALOG:
    _BY_NAME[_info.key.lower()] = _info
    _BY_NAME[_info.symbol.lower()] = _info

METRIC_KEYS: List[str] = [info.key for info in METRIC_CATALOG]


def metric_info(name: str) -> MetricInfo:
    """
    Looks up a metric by report key or symbol, case-insensitively

    Raises:
        KeyError: unknown metric name
    """
    try:
        return _BY_NAME[name.strip().lower()]
    except KeyError:
        raise KeyError(f"Unknown metric: {name}") from None


def polarity_table() -> List[MetricPolarity]:
    """One polarity entry per exported metric, keyed by symbol"""
    return [MetricPolarity(name=info.symbol, direction=info.direction) for info in METRIC_CATALOG]


def polarity_of(name: str) -> str:
    return metric_info(name).direction
