# Catalyst placement search package
from .catalyst_search import (
    CatalystSearcher, CatalystSpec, SearchConfig, SearchConfigError, SearchResult, SearchSolution,
    load_search_config, search_catalysts, write_solutions,
)

__all__ = [
    'CatalystSearcher', 'CatalystSpec', 'SearchConfig', 'SearchConfigError', 'SearchResult', 'SearchSolution',
    'load_search_config', 'search_catalysts', 'write_solutions',
]
