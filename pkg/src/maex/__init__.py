"""Exact computations around the maximal excludant of integer partitions."""

from .errors import (
    BudgetExceededError,
    DivergentProductError,
    IdentityMismatchError,
    MaexError,
    SingularSeriesError,
    UndefinedStatisticError,
    VariableMismatchError,
)
from .partitions import (
    Partition,
    enumerate_partitions,
    maex,
    mex,
    sigma_maex_formula,
    sigma_maex_series_v1,
    sigma_maex_series_v2,
    sigma_maex_series_v3,
    stat_table,
)
from .pell import t_from_qseries, t_multiplicative, t_pell
from .series import BivariateSeries, TruncatedSeries

__version__ = "0.1.0"
