/**
 * Minimal interactive map: an SVG lat/lon plane with a draggable marker and
 * a resizable radius circle per location row.
 *
 * The widget's contract is the bidirectional radius binding: dragging the
 * circle's edge handle reports a new km value back to the form, and editing
 * the form field moves the circle. Projection is equirectangular over a
 * viewport fitted to the dataset sites (plus any query circles), which is
 * plenty at the kilometre scales the tool works with.
 */

const KM_PER_DEG_LAT = 111.19492664455873; // mean earth radius * pi / 180

export interface MapSite {
  name: string;
  lat: number;
  lon: number;
}

export interface MapCircle {
  id: number;
  lat: number;
  lon: number;
  radiusKm: number;
  state: 'included' | 'excluded';
}

export interface MapCallbacks {
  onMarkerMoved(id: number, lat: number, lon: number): void;
  onRadiusChanged(id: number, radiusKm: number): void;
}

interface Viewport {
  latMin: number;
  latMax: number;
  lonMin: number;
  lonMax: number;
}

const SVG_NS = 'http://www.w3.org/2000/svg';

export class MapWidget {
  private sites: MapSite[] = [];
  private circles: MapCircle[] = [];
  private view: Viewport = { latMin: -60, latMax: 75, lonMin: -180, lonMax: 180 };
  private drag:
    | { kind: 'marker' | 'handle'; id: number }
    | null = null;

  constructor(
    private readonly svg: SVGSVGElement,
    private readonly callbacks: MapCallbacks,
  ) {
    svg.addEventListener('pointermove', (ev) => this.onPointerMove(ev));
    svg.addEventListener('pointerup', () => (this.drag = null));
    svg.addEventListener('pointerleave', () => (this.drag = null));
  }

  setSites(sites: MapSite[]): void {
    this.sites = sites;
    this.fitViewport();
    this.render();
  }

  setCircles(circles: MapCircle[]): void {
    this.circles = circles;
    this.fitViewport();
    this.render();
  }

  private fitViewport(): void {
    const lats = [
      ...this.sites.map((s) => s.lat),
      ...this.circles.map((c) => c.lat),
    ];
    const lons = [
      ...this.sites.map((s) => s.lon),
      ...this.circles.map((c) => c.lon),
    ];
    if (!lats.length) return;
    const pad = 0.75;
    this.view = {
      latMin: Math.max(-90, Math.min(...lats) - pad),
      latMax: Math.min(90, Math.max(...lats) + pad),
      lonMin: Math.max(-180, Math.min(...lons) - pad),
      lonMax: Math.min(180, Math.max(...lons) + pad),
    };
  }

  private size(): { w: number; h: number } {
    const rect = this.svg.getBoundingClientRect();
    return { w: rect.width || 600, h: rect.height || 400 };
  }

  private toPx(lat: number, lon: number): { x: number; y: number } {
    const { w, h } = this.size();
    const { latMin, latMax, lonMin, lonMax } = this.view;
    return {
      x: ((lon - lonMin) / (lonMax - lonMin || 1)) * w,
      y: ((latMax - lat) / (latMax - latMin || 1)) * h,
    };
  }

  private toLatLon(x: number, y: number): { lat: number; lon: number } {
    const { w, h } = this.size();
    const { latMin, latMax, lonMin, lonMax } = this.view;
    return {
      lon: lonMin + (x / w) * (lonMax - lonMin),
      lat: latMax - (y / h) * (latMax - latMin),
    };
  }

  private kmPerPx(): number {
    const { h } = this.size();
    const latSpan = this.view.latMax - this.view.latMin;
    return (latSpan * KM_PER_DEG_LAT) / h;
  }

  private onPointerMove(ev: PointerEvent): void {
    if (!this.drag) return;
    const rect = this.svg.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    const circle = this.circles.find((c) => c.id === this.drag?.id);
    if (!circle) return;
    if (this.drag.kind === 'marker') {
      const { lat, lon } = this.toLatLon(x, y);
      this.callbacks.onMarkerMoved(circle.id, round6(lat), round6(lon));
    } else {
      const centre = this.toPx(circle.lat, circle.lon);
      const px = Math.hypot(x - centre.x, y - centre.y);
      const km = Math.max(0.01, px * this.kmPerPx());
      this.callbacks.onRadiusChanged(circle.id, Math.round(km * 100) / 100);
    }
  }

  render(): void {
    this.svg.replaceChildren();
    const { w, h } = this.size();
    this.svg.setAttribute('viewBox', `0 0 ${w} ${h}`);

    for (const site of this.sites) {
      const { x, y } = this.toPx(site.lat, site.lon);
      const dot = document.createElementNS(SVG_NS, 'circle');
      dot.setAttribute('cx', String(x));
      dot.setAttribute('cy', String(y));
      dot.setAttribute('r', '3');
      dot.setAttribute('class', 'site-dot');
      const title = document.createElementNS(SVG_NS, 'title');
      title.textContent = site.name;
      dot.appendChild(title);
      this.svg.appendChild(dot);
    }

    for (const circle of this.circles) {
      const centre = this.toPx(circle.lat, circle.lon);
      const radiusPx = Math.max(2, circle.radiusKm / this.kmPerPx());

      const ring = document.createElementNS(SVG_NS, 'circle');
      ring.setAttribute('cx', String(centre.x));
      ring.setAttribute('cy', String(centre.y));
      ring.setAttribute('r', String(radiusPx));
      ring.setAttribute('class', `radius-circle ${circle.state}`);
      this.svg.appendChild(ring);

      const marker = document.createElementNS(SVG_NS, 'circle');
      marker.setAttribute('cx', String(centre.x));
      marker.setAttribute('cy', String(centre.y));
      marker.setAttribute('r', '6');
      marker.setAttribute('class', `marker ${circle.state}`);
      marker.addEventListener('pointerdown', (ev) => {
        ev.preventDefault();
        this.drag = { kind: 'marker', id: circle.id };
      });
      this.svg.appendChild(marker);

      const handle = document.createElementNS(SVG_NS, 'circle');
      handle.setAttribute('cx', String(centre.x + radiusPx));
      handle.setAttribute('cy', String(centre.y));
      handle.setAttribute('r', '5');
      handle.setAttribute('class', `radius-handle ${circle.state}`);
      handle.addEventListener('pointerdown', (ev) => {
        ev.preventDefault();
        this.drag = { kind: 'handle', id: circle.id };
      });
      this.svg.appendChild(handle);
    }
  }
}

function round6(value: number): number {
  return Math.round(value * 1e6) / 1e6;
}
