import os

from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace.export import (
    BatchSpanProcessor,
    ConsoleSpanExporter,
)
from opentelemetry import trace
from opentelemetry.sdk.trace import TracerProvider


def CreateTracer(service_name, trace_name, console=None):
    """
    Create the tracer used around suite construction, checks and reports.

    Spans are exported to the console only when `console` is true, which defaults
    to the CURVSTRUCT_TRACE environment variable.
    """
    if console is None:
        console = os.getenv("CURVSTRUCT_TRACE", "0") not in ("", "0")

    resource = Resource.create({"service.name": service_name})
    provider = TracerProvider(resource=resource)
    trace.set_tracer_provider(provider)

    if console:
        provider.add_span_processor(BatchSpanProcessor(ConsoleSpanExporter()))

    return trace.get_tracer(trace_name)


my_tracer = CreateTracer("curvature_structures", "classifier")
