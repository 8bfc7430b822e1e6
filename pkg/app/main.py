"""Main FastAPI application for the Graded Stillman Toolkit."""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.config import configure_logging, get_settings


# Create FastAPI application
settings = get_settings()
configure_logging(settings)
app = FastAPI(
    title=settings.app_name,
    version=settings.app_version,
    description="Stillman bounds, support monoids and free resolutions for multigraded polynomial rings",
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"] if settings.debug else [f"http://{settings.api_host}:{settings.api_port}"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/api")
async def api_root():
    """API root endpoint."""
    return {
        "message": f"Welcome to {settings.app_name} API",
        "version": settings.app_version,
        "status": "running"
    }


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "default_field": settings.default_field,
        "version": settings.app_version
    }


# Include API routers
from app.api import ideals, monoids
app.include_router(monoids.router, prefix="/api/monoids", tags=["monoids"])
app.include_router(ideals.router, prefix="/api/ideals", tags=["ideals"])


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "app.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.debug
    )
