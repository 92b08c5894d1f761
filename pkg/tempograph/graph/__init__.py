from .store import GraphStore
from .snapshot import snapshot_save, snapshot_load, snapshot_lines, FORMAT_VERSION
