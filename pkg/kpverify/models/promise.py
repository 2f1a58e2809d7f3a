from dataclasses import dataclass
from traceback import format_exc
from typing import Callable, TypeVar, Optional, Generic

from kpverify.config import LOG
from .response import CODE


class PromiseUnpackError(Exception):
    pass


D = TypeVar("D")


@dataclass
class Promise(Generic[D]):
    """Either a value or an error code with a message; never both."""

    __data: Optional[D]
    __errcode: CODE = CODE.SUCCESS
    __errmsg: str = ""

    @classmethod
    def resolve(cls, data: D) -> "Promise[D]":
        return cls(data)

    @classmethod
    def reject(cls, errcode: CODE, errmsg: str) -> "Promise":
        assert errmsg is not None, "Error Message can't be None!"
        assert errcode in CODE, f"Invalid Error Code: {errcode}"
        return cls(None, errcode, errmsg)

    @classmethod
    def capture(cls, fn: Callable[[], D]) -> "Promise[D]":
        """Run ``fn`` and turn any raised exception into a rejected promise."""
        from kpverify.utils.errors import exception_to_code

        try:
            return cls.resolve(fn())
        except Exception as e:
            LOG.debug(f"Captured {type(e).__name__}: {e} {format_exc()}")
            return cls.reject(exception_to_code(e), f"{type(e).__name__}: {e}")

    def ok(self) -> bool:
        return self.__errcode == CODE.SUCCESS

    def data(self) -> Optional[D]:
        if not self.ok():
            raise PromiseUnpackError(self.msg())
        return self.__data

    def code(self) -> CODE:
        return self.__errcode

    def msg(self) -> str:
        if not self.ok():
            return f"CODE {self.__errcode.name}; ERROR {self.__errmsg}"
        return ""
