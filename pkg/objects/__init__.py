from . import bounds
from . import result
from . import suite
from . import report
from . import term
from . import check
