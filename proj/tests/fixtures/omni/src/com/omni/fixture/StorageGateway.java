package com.omni.fixture;

import android.bluetooth.BluetoothAdapter;
import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;
import android.graphics.Bitmap;
import android.net.Uri;
import java.io.ByteArrayOutputStream;
import java.io.FileInputStream;
import java.io.IOException;
import java.net.HttpURLConnection;
import java.util.Date;
import org.apache.http.HttpResponse;
import org.apache.http.client.methods.HttpGet;
import org.apache.http.impl.client.DefaultHttpClient;

public class StorageGateway {

    public void syncArchive(SQLiteDatabase db) {
        Cursor recent = db.rawQuery("SELECT id FROM points ORDER BY id", null);
        recent.close();
        final Cursor snapshot = db.query("points", "id = 1");
        snapshot.close();
    }

    public int readSeed(String path) throws IOException {
        FileInputStream source = new FileInputStream("/data/data/com.omni.fixture/seed.bin");
        int value = source.read();
        source.close();
        ByteArrayOutputStream sink = new ByteArrayOutputStream();
        sink.write(value);
        sink.close();
        return value;
    }

    public boolean transmitterReady() {
        BluetoothAdapter adapter = BluetoothAdapter.getDefaultAdapter();
        if (adapter.isEnabled()) {
            return true;
        }
        return false;
    }

    public HttpResponse fetchRemote(HttpGet request) throws IOException {
        DefaultHttpClient client = new DefaultHttpClient();
        HttpResponse reply = client.execute(request);
        return reply;
    }

    public void configureChannel(HttpURLConnection channel) {
        channel.setConnectTimeout(15000);
    }

    public Bitmap buildPreview(Bitmap source) {
        return Bitmap.createScaledBitmap(source, 320, 240, false);
    }

    public Uri buildFeedUri() {
        return Uri.parse("content://com.omni.fixture/points");
    }

    public Date startOfEpochWindow() {
        return new Date();
    }
}
