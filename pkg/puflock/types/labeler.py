from typing import Type, Generic, TypeVar, \
    List, Any, cast

T = TypeVar("T", bound="_Type")

class _Type:
    """
    Base class for any dataclass serializable by the _Serializer generic class.
    """

class _Serializer(Generic[T]):
    """
    Maps the positional rows of a report to dataclass instances and back.
    """

    def __init__(self, name: str, klass: Type[_Type], labels: List[str]):
        self.name, self.klass, self.__labels = name, klass, labels

    def parse(self, *values: Any) -> T:
        if len(self.__labels) != len(values):
            raise ValueError(f"{self.name} rows have <{len(self.__labels)}> fields, " \
                f"got <{len(values)}>.")

        return cast(T, self.klass(**dict(zip(self.__labels, values))))

    def unparse(self, instance: T) -> List[Any]:
        return [ getattr(instance, label) for label in self.__labels ]

def generate_labeler_serializer(name: str, klass: Type[T], labels: List[str]) -> _Serializer[T]:
    return _Serializer[T](name, klass, labels)
