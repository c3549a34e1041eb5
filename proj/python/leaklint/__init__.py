"""Static detection of train/test data leakage in data-science code."""

import json

try:
    from ._leaklint import (  # noqa: F401
        analyze_corpus as _analyze_corpus,
        analyze_file as _analyze_file,
        analyze_source as _analyze_source,
        render_text,
    )
except ImportError:  # running against a build tree with the module on sys.path
    from _leaklint import (  # noqa: F401
        analyze_corpus as _analyze_corpus,
        analyze_file as _analyze_file,
        analyze_source as _analyze_source,
        render_text,
    )

__all__ = ["analyze_file", "analyze_source", "analyze_corpus", "render_text"]


def analyze_file(path, specs="builtin", budget=5_000_000, jobs=0, context_depth=2):
    """Analyze a script or notebook; returns the result as a dict."""
    return json.loads(_analyze_file(str(path), specs, budget, jobs, context_depth))


def analyze_source(code, name="<memory>", specs="builtin", budget=5_000_000,
                   context_depth=2):
    """Analyze in-memory source text; returns the result as a dict."""
    return json.loads(_analyze_source(code, name, specs, budget, context_depth))


def analyze_corpus(paths, specs="builtin", budget=5_000_000, jobs=0, context_depth=2):
    """Analyze a batch of files; returns corpus statistics as a dict."""
    return json.loads(
        _analyze_corpus([str(p) for p in paths], specs, budget, jobs, context_depth)
    )
