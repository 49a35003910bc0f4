# ========== PATHS ==========
DPATH_DATA = "data"
DEFAULT_FNAME_STOPWORDS = "stopwords_en.txt"  # shipped with the package
DEFAULT_FNAME_SCORES = "scores.tsv"  # output file names
DEFAULT_FNAME_DET = "det.tsv"
DEFAULT_FNAME_COSTS = "costs.tsv"
DEFAULT_FNAME_GRID = "cost_grid.csv"
DEFAULT_FNAME_BENCH = "bench.tsv"
DEFAULT_FNAME_STREAM = "stream.jsonl"

# ========== STREAM RECORD FIELDS ==========
FIELD_ID = "id"
FIELD_TIMESTAMP = "timestamp"
FIELD_TITLE = "title"
FIELD_TEXT = "text"
FIELD_CONTENT = "content"
FIELD_CLUSTER = "cluster_id"

FIELD_TITLE_SNIPPET = "title_snippet"  # RunConfig.FIELD values
FIELD_CONTENT_ONLY = "content"

# ========== SCORE TSV COLUMNS ==========
COL_DOC_ID = "doc_id"
COL_SCORER = "scorer"
COL_SCHEME = "scheme"
COL_N = "N"
COL_RAW_SCORE = "raw_score"
COL_ELAPSED_NS = "elapsed_ns"
COL_ZERO_LENGTH = "zero_length"
COLS_SCORES = [
    COL_DOC_ID,
    COL_SCORER,
    COL_SCHEME,
    COL_N,
    COL_RAW_SCORE,
    COL_ELAPSED_NS,
    COL_ZERO_LENGTH,
]

# ========== DET / COST COLUMNS ==========
COL_THRESHOLD = "threshold"
COL_P_MISS = "p_miss"
COL_P_FA = "p_fa"
COL_PROBIT_MISS = "probit_miss"
COL_PROBIT_FA = "probit_fa"
COLS_DET = [COL_THRESHOLD, COL_P_MISS, COL_P_FA, COL_PROBIT_MISS, COL_PROBIT_FA]

COL_DECAY = "decay"
COL_ALPHA = "alpha"
COL_AVG_COST = "avgC_Det"
COL_MIN_COST = "minC_Det"
COL_MIN_THRESHOLD = "minC_Det_threshold"
COL_FOLD_COSTS = "fold_costs"
COLS_GRID = [COL_SCORER, COL_SCHEME, COL_N, COL_DECAY, COL_ALPHA, COL_AVG_COST]

# ========== BENCH COLUMNS ==========
COL_MEAN_US = "mean_us"
COL_P95_US = "p95_us"
COL_UPDATE_MEAN_US = "update_mean_us"
COL_N_DOCS = "n_docs"
COLS_BENCH = [COL_SCORER, COL_N, COL_N_DOCS, COL_MEAN_US, COL_P95_US, COL_UPDATE_MEAN_US]

# ========== LABELS ==========
LABEL_NOVEL = "novel"
LABEL_NOT_NOVEL = "not_novel"
LABEL_EXCLUDED = "excluded"

HIGHER_IS_NOVEL = "higher_is_novel"
LOWER_IS_NOVEL = "lower_is_novel"

# ========== SCORERS ==========
SCORER_NS = "ns"
SCORER_NS_T = "ns_t"
SCORER_MAX_CS = "max_cs"
SCORER_MEAN_CS = "mean_cs"
SCORER_MIN_KL = "min_kl"
SCORER_AGG_CS = "agg_cs"

DECAY_LINEAR = "linear"
DECAY_EXP1 = "exp1"
DECAY_EXP2 = "exp2"
DECAY_SIGMOID = "sigmoid"

# ========== DEFAULTS ==========
DEFAULT_SCHEME = "nsd"
DEFAULT_BASELINE_SCHEME = "kbn"  # BM25 weighting for the cosine baselines
DEFAULT_K1 = 1.2
DEFAULT_B = 0.75
DEFAULT_LAMBDA = 0.9
DEFAULT_N = 100
DEFAULT_DECAY = DECAY_SIGMOID
DEFAULT_ALPHA = 35.0
DEFAULT_FOLDS = 5
DEFAULT_SEED = 0
DEFAULT_KL_EMPTY_WINDOW = 1e12  # stands in for +inf in score files
DEFAULT_C_MISS = 1.0
DEFAULT_C_FA = 1.0
DEFAULT_P_TARGET = 0.5
DEFAULT_WINDOW_GRID = list(range(20, 201, 20))

PROBIT_CLIP = 1e-6

# ========== TDF SNAPSHOT ==========
TDF_HEADER_PREFIX = "#"
COL_TERM = "term"
COL_VALUE = "value"
COL_T_LAST = "t_last"
