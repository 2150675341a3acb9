from .tests import *
from .helpers import *
