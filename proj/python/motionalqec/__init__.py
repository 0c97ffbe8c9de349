from ._motionalqec import *  # noqa: F401,F403
