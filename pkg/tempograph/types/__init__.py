from typing import Dict, Any

# entity and edge ids are opaque strings
T_EntityId = str
T_EdgeId = str

# base classes
from .timestamp import Timestamp, UNKNOWN
from .interval import TemporalInterval
from .property_map import PropertyCandidate, PropertyMap, CandidateSet
from .graph_elements import (
    Entity,
    Edge,
    RelationSchema,
    edge_id_for,
    entity_id_for,
    render_entity,
)
from .documents import Document, CandidateEntity, CandidateEdge, PartialGraph
from .oracle_results import (
    RoutePlan,
    MentionAnalysis,
    RelevanceScores,
    Judgement,
    CandidatePath,
)
from .evolution import (
    MergeKind,
    MergeAction,
    MergeReport,
    AlignmentResult,
    SynonymMatch,
    Observation,
    ResolvedEdge,
)
from .reasoning import SubgoalEstimate, PathHop, ReasoningPath, Answer, RouteTrace
from .evaluation import QAItem, Verdict, EvalReport, ComparisonReport

# exceptions
from .exceptions import (
    TempographBaseException,
    ValidationException,
    ReferentialException,
    IntervalException,
    TimestampComparisonException,
    PreconditionException,
    ConfigException,
    SnapshotFormatException,
    DatasetException,
    WorldSpecException,
    OracleFormatException,
    TransportException,
    OracleBudgetException,
    NoAnswerException,
)
