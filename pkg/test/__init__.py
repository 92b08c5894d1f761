from .test_types import *
from .test_store import *
from .test_confidence import *
