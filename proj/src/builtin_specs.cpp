// Bundled API models: sklearn core, pandas core, numpy core, imblearn
// oversamplers, and the minimal keras fit/predict/evaluate surface.
// Declaration order is the match order, so class-qualified entries come
// before module functions and the generic method fallbacks come last.
#include "leaklint/specs.hpp"

namespace leaklint {
namespace {

ApiSpec entry(std::string name, ApiKind kind) {
  ApiSpec s;
  s.name = std::move(name);
  s.kind = kind;
  return s;
}

void add_fitted_transformer(std::vector<ApiSpec>& out, const std::string& module,
                            const std::string& cls) {
  // constructor
  ApiSpec ctor = entry(cls, ApiKind::ModelSource);
  ctor.module = module;
  ctor.model_class = cls;
  ctor.result = ResultRole::Model;
  out.push_back(ctor);
  // fit: learns across rows, folds into the receiver
  ApiSpec fit = entry("fit", ApiKind::ReduceTransform);
  fit.receiver_class = cls;
  fit.data_args = {0};
  fit.label_args = {1};
  fit.fits_receiver = true;
  fit.result = ResultRole::Self;
  out.push_back(fit);
  // fit_transform: the fit plus the transform on one call site
  ApiSpec ft = entry("fit_transform", ApiKind::ReduceTransform);
  ft.receiver_class = cls;
  ft.data_args = {0};
  ft.label_args = {1};
  ft.fits_receiver = true;
  ft.maps_result = true;
  ft.result = ResultRole::Dataset;
  out.push_back(ft);
}

void add_rowwise_transformer(std::vector<ApiSpec>& out, const std::string& module,
                             const std::string& cls) {
  ApiSpec ctor = entry(cls, ApiKind::ModelSource);
  ctor.module = module;
  ctor.model_class = cls;
  out.push_back(ctor);
  ApiSpec fit = entry("fit", ApiKind::MapTransform);
  fit.receiver_class = cls;
  fit.data_args = {0};
  fit.label_args = {1};
  fit.result = ResultRole::Self;
  out.push_back(fit);
  ApiSpec ft = entry("fit_transform", ApiKind::MapTransform);
  ft.receiver_class = cls;
  ft.data_args = {0};
  ft.label_args = {1};
  ft.result = ResultRole::Dataset;
  out.push_back(ft);
}

void add_resampler(std::vector<ApiSpec>& out, const std::string& module,
                   const std::string& cls) {
  ApiSpec ctor = entry(cls, ApiKind::ModelSource);
  ctor.module = module;
  ctor.model_class = cls;
  out.push_back(ctor);
  ApiSpec rs = entry("fit_resample", ApiKind::DuplicateTransform);
  rs.receiver_class = cls;
  rs.data_args = {0};
  rs.label_args = {1};
  rs.result = ResultRole::Dataset;
  out.push_back(rs);
}

void add_model_ctor(std::vector<ApiSpec>& out, const std::string& module,
                    const std::string& cls) {
  ApiSpec ctor = entry(cls, ApiKind::ModelSource);
  ctor.module = module;
  ctor.model_class = cls;
  out.push_back(ctor);
}

void add_source(std::vector<ApiSpec>& out, const std::string& module,
                const std::string& name) {
  ApiSpec s = entry(name, ApiKind::DatasetSource);
  s.module = module;
  s.result = ResultRole::Dataset;
  out.push_back(s);
}

void add_metric(std::vector<ApiSpec>& out, const std::string& name) {
  ApiSpec s = entry(name, ApiKind::Metric);
  s.module = "sklearn.metrics";
  s.data_args = {0, 1};
  s.result = ResultRole::Scalar;
  out.push_back(s);
}

void add_data_method(std::vector<ApiSpec>& out, const std::string& name, ApiKind kind,
                     ResultRole result) {
  ApiSpec s = entry(name, kind);
  s.receiver_is_data = true;
  s.result = result;
  out.push_back(s);
}

}  // namespace

SpecDB builtin_specs() {
  SpecDB db;
  db.library_versions = {
      {"sklearn", "1.x"}, {"pandas", "1.x/2.x"}, {"numpy", "1.x"},
      {"imblearn", "0.x"}, {"keras", "2.x (fit/predict/evaluate only)"},
  };
  std::vector<ApiSpec>& out = db.specs;

  // --- transformers that learn statistics across rows ---
  const char* kPre = "sklearn.preprocessing";
  for (const char* cls : {"StandardScaler", "MinMaxScaler", "MaxAbsScaler",
                          "RobustScaler", "QuantileTransformer", "PowerTransformer",
                          "OneHotEncoder", "OrdinalEncoder", "LabelEncoder",
                          "KBinsDiscretizer", "LabelBinarizer"}) {
    add_fitted_transformer(out, kPre, cls);
  }
  for (const char* cls : {"PCA", "TruncatedSVD", "KernelPCA", "IncrementalPCA",
                          "NMF", "FastICA"}) {
    add_fitted_transformer(out, "sklearn.decomposition", cls);
  }
  for (const char* cls : {"SelectKBest", "SelectPercentile", "VarianceThreshold",
                          "RFE", "RFECV", "SelectFromModel"}) {
    add_fitted_transformer(out, "sklearn.feature_selection", cls);
  }
  for (const char* cls : {"CountVectorizer", "TfidfVectorizer", "TfidfTransformer"}) {
    add_fitted_transformer(out, "sklearn.feature_extraction.text", cls);
  }
  for (const char* cls : {"SimpleImputer", "KNNImputer", "IterativeImputer"}) {
    add_fitted_transformer(out, "sklearn.impute", cls);
  }
  add_fitted_transformer(out, "sklearn.compose", "ColumnTransformer");

  // --- transformers that operate row by row (their fit learns nothing) ---
  for (const char* cls : {"Normalizer", "Binarizer", "PolynomialFeatures",
                          "FunctionTransformer"}) {
    add_rowwise_transformer(out, kPre, cls);
  }
  {
    // LDA trains as a classifier but is also used as a reducing transformer.
    ApiSpec ft = entry("fit_transform", ApiKind::ReduceTransform);
    ft.receiver_class = "LinearDiscriminantAnalysis";
    ft.data_args = {0};
    ft.label_args = {1};
    ft.fits_receiver = true;
    ft.maps_result = true;
    out.push_back(ft);
  }

  // --- pipelines: reduce information comes only from the fit argument ---
  add_model_ctor(out, "sklearn.pipeline", "Pipeline");
  {
    ApiSpec mp = entry("make_pipeline", ApiKind::ModelSource);
    mp.module = "sklearn.pipeline";
    mp.model_class = "Pipeline";
    out.push_back(mp);
    ApiSpec fit = entry("fit", ApiKind::PipelineFit);
    fit.receiver_class = "Pipeline";
    fit.data_args = {0};
    fit.label_args = {1};
    fit.fits_receiver = true;
    fit.result = ResultRole::Self;
    out.push_back(fit);
    ApiSpec ft = entry("fit_transform", ApiKind::PipelineFit);
    ft.receiver_class = "Pipeline";
    ft.data_args = {0};
    ft.label_args = {1};
    ft.fits_receiver = true;
    ft.maps_result = true;
    ft.result = ResultRole::Dataset;
    out.push_back(ft);
  }

  // --- oversampling / row duplication ---
  for (const char* cls : {"SMOTE", "ADASYN", "RandomOverSampler", "BorderlineSMOTE",
                          "SMOTEENN", "SMOTETomek", "RandomUnderSampler"}) {
    add_resampler(out, "imblearn", cls);
  }
  {
    ApiSpec rs = entry("resample", ApiKind::DuplicateTransform);
    rs.module = "sklearn.utils";
    rs.variadic_data = true;
    out.push_back(rs);
    ApiSpec rep = entry("repeat", ApiKind::DuplicateTransform);
    rep.module = "numpy";
    rep.data_args = {0};
    rep.receiver_is_data = true;
    out.push_back(rep);
    ApiSpec tile = entry("tile", ApiKind::DuplicateTransform);
    tile.module = "numpy";
    tile.data_args = {0};
    out.push_back(tile);
  }

  // --- splitting ---
  {
    ApiSpec split = entry("train_test_split", ApiKind::Split);
    split.module = "sklearn.model_selection";
    split.variadic_data = true;
    out.push_back(split);
  }

  // --- dataset sources ---
  for (const char* name : {"read_csv", "read_table", "read_json", "read_excel",
                           "read_parquet", "read_pickle", "read_sql", "read_html",
                           "read_feather", "read_hdf"}) {
    add_source(out, "pandas", name);
  }
  for (const char* name : {"load_iris", "load_digits", "load_wine",
                           "load_breast_cancer", "load_diabetes", "load_boston",
                           "load_linnerud", "load_svmlight_file", "fetch_openml",
                           "fetch_california_housing", "fetch_20newsgroups",
                           "make_classification", "make_regression", "make_blobs",
                           "make_moons", "make_circles"}) {
    add_source(out, "sklearn.datasets", name);
  }
  for (const char* name : {"rand", "randn", "random", "standard_normal", "normal",
                           "uniform", "randint", "choice", "binomial", "poisson",
                           "beta", "exponential", "random_sample"}) {
    add_source(out, "numpy.random", name);
  }
  for (const char* name : {"arange", "linspace", "ones", "zeros", "empty", "eye",
                           "full"}) {
    add_source(out, "numpy", name);
  }

  // --- metrics ---
  for (const char* name : {"accuracy_score", "precision_score", "recall_score",
                           "f1_score", "fbeta_score", "roc_auc_score", "roc_curve",
                           "auc", "log_loss", "confusion_matrix",
                           "classification_report", "mean_squared_error",
                           "mean_absolute_error", "r2_score",
                           "explained_variance_score", "matthews_corrcoef",
                           "cohen_kappa_score"}) {
    add_metric(out, name);
  }

  // --- estimator constructors ---
  for (const char* cls : {"LinearRegression", "LogisticRegression", "Ridge",
                          "RidgeClassifier", "Lasso", "ElasticNet", "SGDClassifier",
                          "SGDRegressor", "Perceptron", "PassiveAggressiveClassifier",
                          "BayesianRidge"}) {
    add_model_ctor(out, "sklearn.linear_model", cls);
  }
  for (const char* cls : {"DecisionTreeClassifier", "DecisionTreeRegressor",
                          "ExtraTreeClassifier"}) {
    add_model_ctor(out, "sklearn.tree", cls);
  }
  for (const char* cls : {"RandomForestClassifier", "RandomForestRegressor",
                          "ExtraTreesClassifier", "ExtraTreesRegressor",
                          "GradientBoostingClassifier", "GradientBoostingRegressor",
                          "AdaBoostClassifier", "AdaBoostRegressor",
                          "BaggingClassifier", "VotingClassifier",
                          "StackingClassifier", "HistGradientBoostingClassifier"}) {
    add_model_ctor(out, "sklearn.ensemble", cls);
  }
  for (const char* cls : {"SVC", "SVR", "LinearSVC", "LinearSVR", "NuSVC"}) {
    add_model_ctor(out, "sklearn.svm", cls);
  }
  for (const char* cls : {"KNeighborsClassifier", "KNeighborsRegressor"}) {
    add_model_ctor(out, "sklearn.neighbors", cls);
  }
  for (const char* cls : {"GaussianNB", "MultinomialNB", "BernoulliNB",
                          "ComplementNB"}) {
    add_model_ctor(out, "sklearn.naive_bayes", cls);
  }
  for (const char* cls : {"MLPClassifier", "MLPRegressor"}) {
    add_model_ctor(out, "sklearn.neural_network", cls);
  }
  for (const char* cls : {"KMeans", "MiniBatchKMeans", "DBSCAN",
                          "AgglomerativeClustering"}) {
    add_model_ctor(out, "sklearn.cluster", cls);
  }
  add_model_ctor(out, "sklearn.discriminant_analysis", "LinearDiscriminantAnalysis");
  for (const char* cls : {"GridSearchCV", "RandomizedSearchCV"}) {
    add_model_ctor(out, "sklearn.model_selection", cls);
  }
  add_model_ctor(out, "xgboost", "XGBClassifier");
  add_model_ctor(out, "xgboost", "XGBRegressor");
  add_model_ctor(out, "lightgbm", "LGBMClassifier");
  add_model_ctor(out, "lightgbm", "LGBMRegressor");
  add_model_ctor(out, "catboost", "CatBoostClassifier");
  add_model_ctor(out, "catboost", "CatBoostRegressor");
  add_model_ctor(out, "keras.models", "Sequential");
  add_model_ctor(out, "keras.models", "Model");
  {
    ApiSpec lm = entry("load_model", ApiKind::ModelSource);
    lm.module = "keras.models";
    lm.model_class = "Model";
    out.push_back(lm);
  }

  // --- row-preserving combination and reshaping ---
  {
    ApiSpec concat = entry("concat", ApiKind::MapTransform);
    concat.module = "pandas";
    concat.data_args = {0};
    out.push_back(concat);
    ApiSpec dummies = entry("get_dummies", ApiKind::MapTransform);
    dummies.module = "pandas";
    dummies.data_args = {0};
    out.push_back(dummies);
    ApiSpec df = entry("DataFrame", ApiKind::MapTransform);
    df.module = "pandas";
    df.data_args = {0};
    out.push_back(df);
    ApiSpec series = entry("Series", ApiKind::MapTransform);
    series.module = "pandas";
    series.data_args = {0};
    out.push_back(series);
    for (const char* name : {"concatenate", "vstack", "hstack", "column_stack",
                             "stack", "array", "asarray", "abs", "round", "where",
                             "log", "log1p", "exp", "sqrt", "clip"}) {
      ApiSpec s = entry(name, ApiKind::MapTransform);
      s.module = "numpy";
      s.data_args = {0};
      out.push_back(s);
    }
    ApiSpec zscore = entry("zscore", ApiKind::ReduceTransform);
    zscore.module = "scipy.stats";
    zscore.data_args = {0};
    zscore.maps_result = true;
    zscore.result = ResultRole::Dataset;
    out.push_back(zscore);
  }

  // --- numpy / pandas reductions (module functions) ---
  for (const char* name : {"mean", "std", "var", "median", "average", "percentile",
                           "quantile", "sum", "amin", "amax", "min", "max",
                           "corrcoef", "cov", "bincount", "histogram"}) {
    ApiSpec s = entry(name, ApiKind::ReduceTransform);
    s.module = "numpy";
    s.data_args = {0};
    s.receiver_is_data = true;  // also matches the method form X.mean()
    s.result = ResultRole::Scalar;
    out.push_back(s);
  }
  {
    ApiSpec uniq = entry("unique", ApiKind::ReduceTransform);
    uniq.module = "numpy";
    uniq.data_args = {0};
    uniq.receiver_is_data = true;
    uniq.result = ResultRole::Dataset;
    out.push_back(uniq);
    ApiSpec len_fn = entry("len", ApiKind::ReduceTransform);
    len_fn.data_args = {0};
    len_fn.result = ResultRole::Scalar;
    out.push_back(len_fn);
    ApiSpec print_fn = entry("print", ApiKind::MapTransform);
    print_fn.result = ResultRole::None;
    out.push_back(print_fn);
  }

  // --- generic dataset methods ---
  for (const char* name : {"count", "mode", "skew", "kurt", "sem", "nunique",
                           "idxmax", "idxmin", "corr", "mad", "prod", "all", "any"}) {
    add_data_method(out, name, ApiKind::ReduceTransform, ResultRole::Scalar);
  }
  for (const char* name : {"describe", "value_counts", "agg", "aggregate"}) {
    add_data_method(out, name, ApiKind::ReduceTransform, ResultRole::Dataset);
  }
  for (const char* name : {"fillna", "replace", "astype", "copy", "round", "clip",
                           "abs", "rename", "map", "apply", "applymap",
                           "sort_values", "sort_index", "reset_index", "set_index",
                           "drop", "merge", "join", "append", "groupby", "interpolate",
                           "toarray", "to_numpy", "to_frame", "todense", "ravel",
                           "flatten", "reshape", "squeeze", "pop", "assign"}) {
    add_data_method(out, name, ApiKind::MapTransform, ResultRole::Dataset);
  }
  for (const char* name : {"dropna", "drop_duplicates", "sample", "head", "tail",
                           "query"}) {
    add_data_method(out, name, ApiKind::FilterTransform, ResultRole::Dataset);
  }

  // --- container passthrough builtins ---
  for (const char* name : {"list", "tuple", "sorted", "reversed", "zip", "enumerate"}) {
    ApiSpec s = entry(name, ApiKind::MapTransform);
    s.variadic_data = true;
    out.push_back(s);
  }

  // --- generic tool-receiver transform and fallbacks (late entries) ---
  {
    ApiSpec tr = entry("transform", ApiKind::MapTransform);
    tr.data_args = {0};
    out.push_back(tr);
    ApiSpec itr = entry("inverse_transform", ApiKind::MapTransform);
    itr.data_args = {0};
    out.push_back(itr);
    ApiSpec grs = entry("fit_resample", ApiKind::DuplicateTransform);
    grs.data_args = {0};
    grs.label_args = {1};
    out.push_back(grs);
    ApiSpec gft = entry("fit_transform", ApiKind::ReduceTransform);
    gft.data_args = {0};
    gft.label_args = {1};
    gft.fits_receiver = true;
    gft.maps_result = true;
    out.push_back(gft);
  }

  // --- evaluation ---
  for (const char* name : {"predict", "predict_proba", "predict_log_proba",
                           "decision_function", "predict_classes"}) {
    ApiSpec s = entry(name, ApiKind::Eval);
    s.data_args = {0};
    s.result = ResultRole::Dataset;
    out.push_back(s);
  }
  for (const char* name : {"score", "evaluate"}) {
    ApiSpec s = entry(name, ApiKind::Eval);
    s.data_args = {0};
    s.label_args = {1};
    s.result = ResultRole::Scalar;
    out.push_back(s);
  }

  // --- training (the very last fallbacks) ---
  {
    ApiSpec fp = entry("fit_predict", ApiKind::Train);
    fp.data_args = {0};
    fp.label_args = {1};
    fp.result = ResultRole::Dataset;
    out.push_back(fp);
    ApiSpec pf = entry("partial_fit", ApiKind::Train);
    pf.data_args = {0};
    pf.label_args = {1};
    pf.result = ResultRole::Self;
    out.push_back(pf);
    ApiSpec fit = entry("fit", ApiKind::Train);
    fit.data_args = {0};
    fit.label_args = {1};
    fit.data_kwargs = {"X", "x"};
    fit.label_kwargs = {"y"};
    fit.result = ResultRole::Self;
    out.push_back(fit);
  }

  return db;
}

}  // namespace leaklint
