from ._cipc import *  # noqa: F401,F403
