/** Browser entry point.  `?api=<base-url>` points the dashboard at a
 * non-default service instance. */

import { ApiClient } from "./api.js";
import { createDashboard } from "./app.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "http://127.0.0.1:8000";
const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
createDashboard(root, new ApiClient(base));
