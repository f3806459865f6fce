from typing import \
    TypeVar, Callable, Optional, \
    Union, Any

from pyee.base import EventEmitter

from .exceptions import UnknownEventError

_Handler = TypeVar("_Handler", bound=Callable[..., None])

_EVENTS = [
    "trial_started", "trial_completed", "sweep_completed",
    "clone_completed"
]

class HarnessEventEmitter(EventEmitter):
    """
    Progress events of the experiment harness. Handlers run synchronously on
    the thread that drives the experiment, in trial order.
    """

    _EVENTS = _EVENTS

    def emit(
        self,
        event: str,
        *args: Any,
        **kwargs: Any
    ) -> bool:
        if event not in HarnessEventEmitter._EVENTS:
            raise UnknownEventError(f"Can't emit unknown event: <{event}>.")

        return super().emit(event, *args, **kwargs)

    def on(
        self, event: str, f: Optional[_Handler] = None
    ) -> Union[_Handler, Callable[[_Handler], _Handler]]:
        if event not in HarnessEventEmitter._EVENTS:
            raise UnknownEventError(f"Can't register to unknown event: <{event}> " + \
                f"(available events: {', '.join(HarnessEventEmitter._EVENTS)}).")

        return super().on(event, f)

    def has_listeners(self, event: str) -> bool:
        with self._lock:
            listeners = self._events.get(event)

        return bool(listeners)
