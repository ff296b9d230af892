from svsec.engine.trace import Trace

__all__ = ["Trace"]
