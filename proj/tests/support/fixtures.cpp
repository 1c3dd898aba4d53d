#include "fixtures.hpp"

namespace fixtures {

using namespace ifacelint;

CodeModel Decls::build() const {
    return CodeModel::build(interfaces, classes, calls, system_loc);
}

MethodDecl im(const std::string& ret, const std::string& name,
              const std::vector<std::string>& params) {
    MethodDecl decl;
    decl.signature = MethodSignature::make(ret, name, params);
    decl.is_public = true;
    decl.is_abstract = true;
    decl.loc = 0;
    return decl;
}

MethodDecl cm(const std::string& ret, const std::string& name,
              const std::vector<std::string>& params, long loc, bool is_public) {
    MethodDecl decl;
    decl.signature = MethodSignature::make(ret, name, params);
    decl.is_public = is_public;
    decl.is_abstract = false;
    decl.loc = loc;
    return decl;
}

CallRecord call(const std::string& caller, const std::string& receiver,
                const std::string& method, int argc) {
    return CallRecord{TypeRef::from_qualified(caller),
                      TypeRef::from_qualified(receiver), method, argc};
}

Decls collections_pair() {
    Decls d;
    InterfaceDecl set;
    set.ref = {"jcf", "Set"};
    set.methods = {
        im("int", "size"),
        im("boolean", "isEmpty"),
        im("boolean", "contains", {"Object"}),
        im("Iterator", "iterator"),
        im("Object[]", "toArray"),
        im("Object[]", "toArray", {"Object[]"}),
        im("boolean", "add", {"Object"}),
        im("boolean", "remove", {"Object"}),
        im("boolean", "containsAll", {"Collection"}),
        im("boolean", "addAll", {"Collection"}),
        im("boolean", "retainAll", {"Collection"}),
        im("boolean", "removeAll", {"Collection"}),
        im("void", "clear"),
    };
    InterfaceDecl map;
    map.ref = {"jcf", "Map"};
    map.methods = {
        im("int", "size"),
        im("boolean", "isEmpty"),
        im("boolean", "containsKey", {"Object"}),
        im("boolean", "containsValue", {"Object"}),
        im("Object", "get", {"Object"}),
        im("Object", "put", {"Object", "Object"}),
        im("Object", "remove", {"Object"}),
        im("void", "putAll", {"Map"}),
        im("void", "clear"),
        im("Set", "keySet"),
        im("Collection", "values"),
        im("Set", "entrySet"),
    };
    d.interfaces = {set, map};
    d.system_loc = 60;
    return d;
}

Decls disk_request_quadruple() {
    Decls d;
    auto shared = [] {
        return std::vector<MethodDecl>{
            im("long", "getOffset"),
            im("int", "getPieceNumber"),
            im("int", "getLength"),
        };
    };
    InterfaceDecl write_request;
    write_request.ref = {"vuze.disk", "DiskManagerWriteRequest"};
    write_request.methods = shared();
    InterfaceDecl read_request;
    read_request.ref = {"vuze.disk", "DiskManagerReadRequest"};
    read_request.methods = shared();
    InterfaceDecl peer_read;
    peer_read.ref = {"vuze.peer", "PeerReadRequest"};
    peer_read.methods = shared();
    peer_read.methods.push_back(im("void", "cancel"));
    InterfaceDecl peer_disk_read;
    peer_disk_read.ref = {"vuze.peer", "DiskManagerReadRequest"};
    peer_disk_read.methods = shared();
    peer_disk_read.methods.push_back(im("void", "reset"));
    d.interfaces = {write_request, read_request, peer_read, peer_disk_read};

    ClassDecl write_impl;
    write_impl.ref = {"vuze.diskimpl", "DiskManagerWriteRequestImpl"};
    write_impl.implements = {write_request.ref};
    write_impl.methods = {
        cm("long", "getOffset", {}, 3),
        cm("int", "getPieceNumber", {}, 3),
        cm("int", "getLength", {}, 3),
    };
    ClassDecl read_impl;
    read_impl.ref = {"vuze.diskimpl", "DiskManagerReadRequestImpl"};
    read_impl.implements = {read_request.ref, peer_read.ref};
    read_impl.methods = {
        cm("long", "getOffset", {}, 3),
        cm("int", "getPieceNumber", {}, 3),
        cm("int", "getLength", {}, 3),
        cm("void", "cancel", {}, 3),
    };
    ClassDecl router;
    router.ref = {"vuze.core", "RequestRouter"};
    router.methods = {cm("void", "route", {}, 4)};
    d.classes = {write_impl, read_impl, router};

    d.calls = {
        call("vuze.core.RequestRouter", "vuze.disk.DiskManagerReadRequest",
             "getOffset", 0),
        call("vuze.core.RequestRouter", "vuze.peer.PeerReadRequest", "cancel", 0),
    };
    d.system_loc = 40;
    return d;
}

Decls download_manager() {
    Decls d;
    const std::string iface = "plugins.download.DownloadManager";
    const std::string impl = "pluginsimpl.local.download.DownloadManagerImpl";
    const std::string rp = "pluginsimpl.local.download.RPDownloadManager";

    // the eight declarations no client reaches, then the twenty-three used
    struct Entry {
        const char* ret;
        const char* name;
        std::vector<std::string> params;
        long impl_loc; // line count in DownloadManagerImpl
    };
    const std::vector<Entry> methods = {
        {"boolean", "canResumeDownloads", {}, 5},
        {"boolean", "canPauseDownloads", {}, 6},
        {"void", "setSaveLocationManager", {"SaveLocationManager"}, 7},
        {"void", "removeDownloadWillBeAddedListener", {"DownloadWillBeAddedListener"}, 7},
        {"Download", "addDownload", {"URL", "URL"}, 7},
        {"DownloadEventNotifier", "getGlobalDownloadEventNotifier", {}, 7},
        {"SaveLocationManager", "getSaveLocationManager", {}, 8},
        {"SaveLocationManager", "getDefaultSaveLocationManager", {}, 3},
        {"void", "resumeDownloads", {}, 4},
        {"void", "pauseDownloads", {}, 3},
        {"Download[]", "getDownloads", {}, 3},
        {"Download[]", "getDownloads", {"boolean"}, 3},
        {"Download", "addDownload", {"File"}, 3},
        {"void", "removeDownload", {"Download"}, 3},
        {"void", "addListener", {"DownloadManagerListener"}, 3},
        {"void", "removeListener", {"DownloadManagerListener"}, 3},
        {"void", "addDownloadWillBeAddedListener", {"DownloadWillBeAddedListener"}, 3},
        {"DownloadManagerStats", "getStats", {}, 3},
        {"boolean", "isSeedingOnly", {}, 3},
        {"Download", "getDownload", {"Torrent"}, 3},
        {"void", "startAllDownloads", {}, 3},
        {"void", "stopAllDownloads", {}, 3},
        {"Download", "addNonPersistentDownload", {"Torrent"}, 3},
        {"void", "refreshTrackers", {}, 3},
        {"DownloadEventNotifier", "getEventNotifier", {}, 3},
        {"void", "setPriority", {"Download", "int"}, 3},
        {"boolean", "isPaused", {}, 3},
        {"void", "requestTrackerAnnounce", {"Download"}, 3},
        {"DownloadStub[]", "getDownloadStubs", {}, 3},
        {"void", "addStubListener", {"DownloadStubListener"}, 3},
        {"long", "getTotalBytesReceived", {}, 3},
    };

    InterfaceDecl manager;
    manager.ref = TypeRef::from_qualified(iface);
    ClassDecl manager_impl;
    manager_impl.ref = TypeRef::from_qualified(impl);
    manager_impl.implements = {manager.ref};
    ClassDecl rp_impl;
    rp_impl.ref = TypeRef::from_qualified(rp);
    rp_impl.implements = {manager.ref};
    for (const auto& m : methods) {
        manager.methods.push_back(im(m.ret, m.name, m.params));
        manager_impl.methods.push_back(cm(m.ret, m.name, m.params, m.impl_loc));
        rp_impl.methods.push_back(cm(m.ret, m.name, m.params, 1));
    }
    manager_impl.methods.push_back(cm("void", "initialise", {}, 3));
    rp_impl.methods.push_back(cm("Object", "getDelegate", {}, 1));

    ClassDecl ui;
    ui.ref = {"plugins.ui", "UIManagerCore"};
    ui.methods = {cm("void", "refresh", {}, 10)};
    ClassDecl ops;
    ops.ref = {"plugins.core", "TorrentOps"};
    ops.methods = {cm("void", "processQueue", {}, 10)};
    ClassDecl panel;
    panel.ref = {"plugins.ui", "StatusPanel"};
    panel.methods = {cm("void", "renderSummary", {}, 9)};

    d.interfaces = {manager};
    d.classes = {manager_impl, rp_impl, ui, ops, panel};

    const std::string ui_name = "plugins.ui.UIManagerCore";
    const std::string ops_name = "plugins.core.TorrentOps";
    const std::string panel_name = "plugins.ui.StatusPanel";
    d.calls = {
        call(impl, impl, "getDefaultSaveLocationManager", 0),
        call(ui_name, iface, "resumeDownloads", 0),
        call(ui_name, iface, "pauseDownloads", 0),
        call(ui_name, iface, "getDownloads", 0),
        call(ui_name, iface, "getDownloads", 1),
        call(ui_name, iface, "addDownload", 1),
        call(ui_name, iface, "removeDownload", 1),
        call(ui_name, iface, "addListener", 1),
        call(ui_name, iface, "removeListener", 1),
        call(ops_name, iface, "addDownloadWillBeAddedListener", 1),
        call(ops_name, iface, "getStats", 0),
        call(ops_name, iface, "isSeedingOnly", 0),
        call(ops_name, iface, "getDownload", 1),
        call(ops_name, iface, "startAllDownloads", 0),
        call(ops_name, iface, "stopAllDownloads", 0),
        call(ops_name, iface, "addNonPersistentDownload", 1),
        call(ops_name, iface, "refreshTrackers", 0),
        call(panel_name, iface, "getEventNotifier", 0),
        call(panel_name, iface, "setPriority", 2),
        call(panel_name, iface, "isPaused", 0),
        call(panel_name, iface, "requestTrackerAnnounce", 1),
        call(panel_name, iface, "getDownloadStubs", 0),
        call(panel_name, iface, "addStubListener", 1),
        call(panel_name, impl, "getTotalBytesReceived", 0),
    };
    d.system_loc = 4200;
    return d;
}

Decls filter_zoo() {
    Decls d;
    InterfaceDecl service;
    service.ref = {"org.app.core", "Service"};
    service.methods = {im("void", "run")};
    InterfaceDecl marker;
    marker.ref = {"org.app.core", "Marker"};
    InterfaceDecl orphan;
    orphan.ref = {"org.app.core", "Orphan"};
    orphan.methods = {im("void", "orphanCall")};
    InterfaceDecl probe;
    probe.ref = {"org.app.core", "Probe"};
    probe.methods = {im("void", "probe")};
    InterfaceDecl fake;
    fake.ref = {"org.app.tests", "FakeIface"};
    fake.methods = {im("void", "pretend")};
    fake.is_test = true;
    d.interfaces = {service, marker, orphan, probe, fake};

    ClassDecl service_impl;
    service_impl.ref = {"org.app.core", "ServiceImpl"};
    service_impl.implements = {service.ref};
    service_impl.methods = {cm("void", "run", {}, 4)};
    ClassDecl legacy;
    legacy.ref = {"org.app.core", "LegacyTest"};
    legacy.extends = TypeRef{"junit.framework", "TestCase"};
    legacy.methods = {cm("void", "testService", {}, 4)};
    legacy.is_test = true;
    ClassDecl deep;
    deep.ref = {"org.app.core", "DeepCheck"};
    deep.extends = legacy.ref;
    deep.methods = {cm("void", "testDeep", {}, 4)};
    deep.is_test = true;
    ClassDecl helper;
    helper.ref = {"org.app.tests.util", "Helper"};
    helper.methods = {cm("void", "assist", {}, 4)};
    helper.is_test = true;
    ClassDecl probe_stub;
    probe_stub.ref = {"org.app.tests", "ProbeStub"};
    probe_stub.implements = {probe.ref};
    probe_stub.methods = {cm("void", "probe", {}, 4)};
    probe_stub.is_test = true;
    ClassDecl caller;
    caller.ref = {"org.app.core", "Caller"};
    caller.methods = {cm("void", "drive", {}, 3)};
    d.classes = {service_impl, legacy, deep, helper, probe_stub, caller};

    d.calls = {call("org.app.core.Caller", "org.app.core.Service", "run", 0)};
    d.system_loc = 90;
    return d;
}

} // namespace fixtures
