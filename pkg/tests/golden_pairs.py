"""Paired VDM/diagram fixtures covering every translation behaviour.

Each pair holds equivalent sources: translating the VDM side forward
must print exactly the diagram side, and translating the diagram side
back must equal the canonicalized VDM side (bodies and initialisers
reduce to skeletons on the way back).
"""

from textwrap import dedent


def _pair(name, vdm, puml):
    return name, dedent(vdm).lstrip(), dedent(puml).lstrip()


GOLDEN_PAIRS = [
    _pair(
        "class_declaration",
        """
        class A
        end A
        """,
        """
        @startuml
        class A {
        }
        @enduml
        """,
    ),
    _pair(
        "plain_attribute",
        """
        class Class
        instance variables
        var1 : Type;
        end Class
        """,
        """
        @startuml
        class Class {
          - var1 : Type
        }
        @enduml
        """,
    ),
    _pair(
        "attribute_stereotypes",
        """
        class Class
        values
        val1 : real = value1;
        types
        type1 = nat;
        end Class
        """,
        """
        @startuml
        class Class {
          - val1 : real <<value>>
          - type1 : nat <<type>>
        }
        @enduml
        """,
    ),
    _pair(
        "operation",
        """
        class Class
        operations
        op1 : Type ==> Type
        op1(p1) == ( ... );
        end Class
        """,
        """
        @startuml
        class Class {
          - op1(Type) : Type
        }
        @enduml
        """,
    ),
    _pair(
        "function_stereotype",
        """
        class Class
        functions
        func1 : Type -> Type
        func1(p1) == ( ... );
        end Class
        """,
        """
        @startuml
        class Class {
          - func1(Type) : Type <<function>>
        }
        @enduml
        """,
    ),
    _pair(
        "access_modifiers",
        """
        class Class
        instance variables
        private member1 : Type;
        protected member2 : Type;
        public member3 : Type;
        end Class
        """,
        """
        @startuml
        class Class {
          - member1 : Type
          # member2 : Type
          + member3 : Type
        }
        @enduml
        """,
    ),
    _pair(
        "static_member",
        """
        class Class
        instance variables
        static member1 : Type;
        end Class
        """,
        """
        @startuml
        class Class {
          - {static} member1 : Type
        }
        @enduml
        """,
    ),
    _pair(
        "inheritance",
        """
        class A
        end A
        class B is subclass of A
        end B
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        A <|-- B
        @enduml
        """,
    ),
    _pair(
        "association",
        """
        class A
        instance variables
        assoc1 : B;
        end A
        class B
        end B
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        A --> B : assoc1
        @enduml
        """,
    ),
    _pair(
        "unordered_collections",
        """
        class A
        instance variables
        assoc1 : set of B;
        assoc2 : set1 of C;
        end A
        class B
        end B
        class C
        end C
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        class C {
        }
        A --> "0..*" B : assoc1
        A --> "1..*" C : assoc2
        @enduml
        """,
    ),
    _pair(
        "ordered_collections",
        """
        class A
        instance variables
        assoc1 : seq of B;
        assoc2 : seq1 of C;
        end A
        class B
        end B
        class C
        end C
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        class C {
        }
        A --> "(0..*)" B : assoc1
        A --> "(1..*)" C : assoc2
        @enduml
        """,
    ),
    _pair(
        "optional_association",
        """
        class A
        instance variables
        assoc1 : [B];
        end A
        class B
        end B
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        A --> "0..1" B : assoc1
        @enduml
        """,
    ),
    _pair(
        "qualified_association",
        """
        class A
        instance variables
        quali1 : map Type to B;
        end A
        class B
        end B
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        A [Type] --> B : quali1
        @enduml
        """,
    ),
    _pair(
        "unique_qualified_association",
        """
        class A
        instance variables
        quali1 : inmap Type to B;
        end A
        class B
        end B
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        A [(Type)] --> B : quali1
        @enduml
        """,
    ),
    _pair(
        "qualified_association_multiplicity",
        """
        class A
        instance variables
        quali1 : inmap Type to seq of B;
        end A
        class B
        end B
        """,
        """
        @startuml
        class A {
        }
        class B {
        }
        A [(Type)] --> "(0..*)" B : quali1
        @enduml
        """,
    ),
]
